// Command-line front end: exact r-derangement computations, verification
// suites, periodicity certificates, valuation trees, diophantine solvers,
// and saddle-point estimates. Machine-readable output goes to stdout, human
// summaries to stderr.
//
// Exit codes: 0 success, 1 verification failure, 2 usage, 3 precision
// exhaustion.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rderange/rderange.hpp"

using namespace rderange;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecision = 3;

Rat parse_rational(const std::string& text) {
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument("not a rational: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

SequenceKind parse_kind(const std::string& text) {
    if (text == "D" || text == "d") return SequenceKind::D;
    if (text == "C" || text == "c") return SequenceKind::C;
    throw std::invalid_argument("sequence kind must be D or C");
}

// ---------------------------------------------------------------- cache ---

struct CacheSession {
    std::optional<std::filesystem::path> path;

    explicit CacheSession(DerangementTable& table) : path(default_cache_path()) {
        if (!path || !std::filesystem::exists(*path)) return;
        std::string warning;
        auto cache = SequenceCache::load(*path, &warning);
        if (!cache) {
            std::cerr << "warning: ignoring cache (" << warning << ")\n";
            return;
        }
        cache->apply(table);
    }

    void flush(const DerangementTable& table) const {
        if (!path) return;
        try {
            SequenceCache::from_table(table).save(*path);
        } catch (const std::exception& e) {
            std::cerr << "warning: cache not saved: " << e.what() << "\n";
        }
    }
};

// ------------------------------------------------------------ subcommands ---

struct ComputeArgs {
    unsigned r = 0;
    unsigned n = 0;
    std::string formula = "recurrence";
    bool reduced = false;
};

int cmd_compute(DerangementTable& table, const ComputeArgs& a) {
    if (a.reduced) {
        std::cout << table.reduced(a.r, a.n).get_str() << "\n";
        return kExitOk;
    }
    Int value;
    if (a.formula == "recurrence") {
        value = table.r_derangement(a.r, a.n);
    } else if (a.formula == "closed") {
        value = r_derangement_closed(a.r, a.n);
    } else if (a.formula == "lift") {
        if (a.r < 1) throw std::invalid_argument("lift formula needs r >= 1");
        value = r_derangement_lift(table, a.r - 1, a.n);
    } else if (a.formula.rfind("convolution:", 0) == 0) {
        unsigned s = static_cast<unsigned>(std::stoul(a.formula.substr(12)));
        value = r_derangement_convolution(table, a.r, s, a.n);
    } else {
        throw std::invalid_argument("unknown formula: " + a.formula);
    }
    std::cout << value.get_str() << "\n";
    return kExitOk;
}

int cmd_table(DerangementTable& table, unsigned r, unsigned n_max, const std::string& format) {
    table.extend(r, n_max);
    if (format == "csv") {
        std::cout << "r,n,value\n";
        for (unsigned n = 0; n <= n_max; ++n)
            std::cout << r << "," << n << "," << table.r_derangement(r, n).get_str() << "\n";
    } else if (format == "json") {
        json j;
        j["r"] = r;
        j["max_n"] = n_max;
        j["values"] = json::array();
        for (unsigned n = 0; n <= n_max; ++n)
            j["values"].push_back({{"n", n}, {"value", table.r_derangement(r, n).get_str()}});
        std::cout << j.dump(2) << "\n";
    } else {
        throw std::invalid_argument("format must be csv or json");
    }
    return kExitOk;
}

// Each named suite runs one invariant family and reports its failures.
struct SuiteResult {
    unsigned long checks = 0;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) failures.push_back(what);
    }
};

SuiteResult run_suite_oracle(DerangementTable& t) {
    SuiteResult s;
    for (unsigned r = 0; r <= 9; ++r)
        for (unsigned n = 0; n + r <= 9; ++n)
            s.expect(oracle_count(r, n) == t.r_derangement(r, n),
                     "oracle mismatch at r=" + std::to_string(r) + " n=" + std::to_string(n));
    return s;
}

SuiteResult run_suite_formulas(DerangementTable& t) {
    SuiteResult s;
    for (unsigned r = 1; r <= 6; ++r) {
        for (unsigned n = r; n <= 200; ++n) {
            const Int ref = t.r_derangement(r, n);
            const std::string at = " at r=" + std::to_string(r) + " n=" + std::to_string(n);
            s.expect(r_derangement_closed(r, n) == ref, "closed formula" + at);
            for (unsigned split = 1; split <= r; ++split)
                s.expect(r_derangement_convolution(t, r, split, n) == ref,
                         "convolution s=" + std::to_string(split) + at);
            s.expect(r_derangement_lift(t, r - 1, n) == ref, "lift" + at);
            s.expect(ref % factorial(r) == 0, "r! divisibility" + at);
            s.expect(ref % falling_factorial(Int(n), r) == 0, "(n)_r divisibility" + at);
            s.expect(ref < t.r_derangement(r, n + 1), "monotonicity" + at);
        }
        s.expect(t.r_derangement(r, r) == factorial(r), "D_r(r) = r!");
        if (r >= 2)
            s.expect(t.r_derangement(r, r + 1) == r * factorial(r + 1), "D_r(r+1) = r(r+1)!");
    }
    for (unsigned n = 0; n <= 200; ++n)
        s.expect(t.r_derangement(1, n) == t.derangement(n + 1), "D_1(n) = D(n+1)");
    return s;
}

SuiteResult run_suite_lah(DerangementTable& t) {
    SuiteResult s;
    for (unsigned r = 0; r <= 5; ++r)
        for (unsigned n = std::max(r, 1u); n <= 30; ++n)
            s.expect(lah_identity_check(t, r, n),
                     "lah identity at r=" + std::to_string(r) + " n=" + std::to_string(n));
    return s;
}

SuiteResult run_suite_expectation(DerangementTable& t) {
    SuiteResult s;
    for (unsigned r = 0; r <= 5; ++r)
        for (unsigned n = r + 1; n <= 25; ++n) {
            Rat expected(Int(n) - r, Int(n));
            expected.canonicalize();
            s.expect(fixed_point_expectation(t, r, n) == expected,
                     "expectation at r=" + std::to_string(r) + " n=" + std::to_string(n));
        }
    return s;
}

SuiteResult run_suite_poly(DerangementTable& t) {
    SuiteResult s;
    for (unsigned n = 0; n <= 25; ++n) {
        IntPolynomial p = p_poly(n);
        s.expect(p == p_poly_direct(n), "P_n constructions differ at n=" + std::to_string(n));
        s.expect(p.degree() == static_cast<int>(n) && p.coeff(n) == 1,
                 "P_n not monic of degree n at n=" + std::to_string(n));
    }
    for (unsigned r = 0; r <= 5; ++r)
        for (unsigned n = 0; n <= 40; ++n)
            s.expect(p_identity_check(t, r, n),
                     "P identity at r=" + std::to_string(r) + " n=" + std::to_string(n));
    return s;
}

SuiteResult run_suite_mod2(DerangementTable&) {
    SuiteResult s;
    for (unsigned n = 0; n <= 20; ++n)
        s.expect(mod2_factor_check(n), "mod-2 factorization at n=" + std::to_string(n));
    return s;
}

int cmd_verify(DerangementTable& table, const std::string& suite) {
    using Runner = SuiteResult (*)(DerangementTable&);
    const std::vector<std::pair<std::string, Runner>> all = {
        {"oracle", run_suite_oracle},   {"formulas", run_suite_formulas},
        {"lah", run_suite_lah},         {"expectation", run_suite_expectation},
        {"poly", run_suite_poly},       {"mod2", run_suite_mod2},
    };

    json report = json::array();
    bool ok = true;
    for (const auto& [name, runner] : all) {
        if (suite != "all" && suite != name) continue;
        SuiteResult r = runner(table);
        report.push_back({{"suite", name}, {"checks", r.checks}, {"failures", r.failures}});
        std::cerr << "suite " << name << ": " << r.checks << " checks, " << r.failures.size()
                  << " failures\n";
        if (!r.failures.empty()) ok = false;
    }
    if (report.empty()) throw std::invalid_argument("unknown suite: " + suite);
    std::cout << report.dump(2) << "\n";
    return ok ? kExitOk : kExitVerificationFailure;
}

int cmd_period(DerangementTable& table, const std::string& kind_text, unsigned r, unsigned long d,
               unsigned horizon) {
    ResidueCertificate cert = certify_period(table, parse_kind(kind_text), r, d, horizon);
    json j;
    j["kind"] = cert.kind == SequenceKind::D ? "D" : "C";
    j["r"] = cert.r;
    j["modulus"] = cert.modulus;
    j["claimed_period"] = cert.claimed_period;
    j["first_index"] = first_index(cert.kind, cert.r);
    j["residues"] = cert.residues;
    j["verified_up_to"] = cert.verified_up_to;
    std::cout << j.dump(2) << "\n";
    std::cerr << "period " << cert.claimed_period << " verified to index " << cert.verified_up_to
              << "\n";
    return kExitOk;
}

int cmd_valuation(DerangementTable& table, unsigned long p, unsigned r, unsigned depth,
                  unsigned scan_bound, bool dot) {
    auto nodes = valuation_tree(table, p, r, depth, scan_bound);
    if (dot)
        std::cout << tree_to_dot(nodes);
    else
        std::cout << tree_to_json(nodes) << "\n";
    std::cerr << nodes.size() << " node(s) verified to n <= " << scan_bound << "\n";
    return kExitOk;
}

int cmd_asympt(DerangementTable& table, unsigned r, unsigned n, unsigned digits, bool check_bound,
               unsigned max_digits) {
    Estimate plain = saddle_estimate(table, r, n, digits, /*normalized=*/false);
    Estimate normalized = saddle_estimate(table, r, n, digits, /*normalized=*/true);
    json j;
    j["r"] = r;
    j["n"] = n;
    j["digits"] = digits;
    j["estimate_over_n_factorial"] = plain.decimal();
    j["exact_over_n_factorial"] = plain.exact_decimal();
    j["estimate_over_n_plus_r_factorial"] = normalized.decimal();
    j["exact_over_n_plus_r_factorial"] = normalized.exact_decimal();
    j["abs_error"] = to_decimal(normalized.abs_error(), std::min(digits, 3u));
    if (check_bound) j["t2_bound_holds"] = t2_bound_check(table, r, n, max_digits);
    std::cout << j.dump(2) << "\n";
    std::cerr << "estimate " << normalized.decimal() << " vs exact " << normalized.exact_decimal()
              << "\n";
    return kExitOk;
}

int cmd_solve_factorial(DerangementTable& table, unsigned r, const std::string& q_text,
                        unsigned max_digits) {
    SolutionSet s = solve_factorial(table, r, parse_rational(q_text), max_digits);
    std::cout << s.to_json() << "\n";
    std::cerr << s.solutions.size() << " solution(s), search bound m0 = " << s.search_bound_m
              << "\n";
    return kExitOk;
}

int cmd_solve_prime_power(DerangementTable& table, unsigned long cap) {
    PrimePowerResult r = solve_prime_power_r2(table, cap);
    std::cout << r.to_json() << "\n";
    std::cerr << r.solutions.size() << " solution(s), certified to n <= " << r.verified_up_to
              << "\n";
    return kExitOk;
}

int cmd_density(DerangementTable& table, unsigned r, unsigned long x) {
    if (x < 2) throw std::invalid_argument("density: requires x >= 2");
    auto primes = prime_sieve(x);
    unsigned long members = 0;
    std::optional<unsigned long> largest;
    for (unsigned long p : primes) {
        if (classify_prime(table, p, r).in_a) {
            ++members;
            largest = p;
        }
    }
    Rat density(Int(members), Int(primes.size()));
    density.canonicalize();
    json j;
    j["r"] = r;
    j["x"] = x;
    j["primes"] = primes.size();
    j["certifying_primes"] = members;
    if (largest) j["largest_certifying_prime"] = *largest;
    j["density"] = density.get_str();
    j["density_decimal"] = to_decimal_fixed(density, 6);
    j["reference_inv_e"] = to_decimal_fixed(inv_e_series(12), 6);
    std::cout << j.dump(2) << "\n";
    std::cerr << members << "/" << primes.size() << " primes up to " << x << " are certifying\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact r-derangement number toolkit"};
    app.require_subcommand(1);
    unsigned max_digits = 10000;
    app.add_option("--max-digits", max_digits,
                   "Digit cap for certified transcendental comparisons");

    ComputeArgs compute_args;
    auto* compute = app.add_subcommand("compute", "Print D_r(n) or C_r(n)");
    compute->add_option("r", compute_args.r, "Order r")->required();
    compute->add_option("n", compute_args.n, "Index n")->required();
    compute->add_option("--formula", compute_args.formula,
                        "recurrence|closed|convolution:s|lift");
    compute->add_flag("--reduced", compute_args.reduced, "Print C_r(n) = D_r(n)/(n)_r");

    unsigned table_r = 0, table_nmax = 0;
    std::string table_format = "csv";
    auto* table_cmd = app.add_subcommand("table", "Print D_r(0..n_max)");
    table_cmd->add_option("r", table_r)->required();
    table_cmd->add_option("n_max", table_nmax)->required();
    table_cmd->add_option("--format", table_format, "csv|json");

    std::string verify_suite;
    auto* verify = app.add_subcommand("verify", "Run an invariant suite");
    verify->add_option("--suite", verify_suite, "oracle|formulas|lah|expectation|poly|mod2|all")
        ->required();

    std::string period_kind;
    unsigned period_r = 0, period_horizon = 0;
    unsigned long period_d = 0;
    auto* period = app.add_subcommand("period", "Certify residue periodicity");
    period->add_option("kind", period_kind, "D or C")->required();
    period->add_option("r", period_r)->required();
    period->add_option("d", period_d)->required();
    period->add_option("horizon", period_horizon, "Horizon in multiples of d")->required();

    unsigned long val_p = 0;
    unsigned val_r = 0, val_depth = 0, val_scan = 0;
    bool val_dot = false;
    auto* valuation = app.add_subcommand("valuation", "Build the p-adic lifting tree");
    valuation->add_option("p", val_p)->required();
    valuation->add_option("r", val_r)->required();
    valuation->add_option("depth", val_depth)->required();
    valuation->add_option("scan_bound", val_scan)->required();
    valuation->add_flag("--dot", val_dot, "Emit Graphviz DOT instead of JSON");

    auto* solve = app.add_subcommand("solve", "Solve a diophantine equation");
    std::vector<std::string> solve_factorial_args;
    unsigned long solve_pp_cap = 0;
    auto* opt_fact = solve->add_option("--factorial", solve_factorial_args,
                                       "r q: solve D_r(n) = q m!")
                         ->expected(2);
    auto* opt_pp = solve->add_option("--prime-power-r2", solve_pp_cap,
                                     "cap: solve D_2(n) = p^k for n <= cap");
    opt_fact->excludes(opt_pp);

    unsigned as_r = 0, as_n = 0, as_digits = 0;
    bool as_check = false;
    auto* asympt = app.add_subcommand("asympt", "Saddle-point estimate vs exact value");
    asympt->add_option("r", as_r)->required();
    asympt->add_option("n", as_n)->required();
    asympt->add_option("digits", as_digits)->required();
    asympt->add_flag("--check-bound", as_check, "Also certify the deviation bound");

    unsigned den_r = 0;
    unsigned long den_x = 0;
    auto* density = app.add_subcommand("density", "Certifying-prime density up to x");
    density->add_option("r", den_r)->required();
    density->add_option("x", den_x)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message or help text
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    DerangementTable table;
    CacheSession cache(table);
    try {
        int rc = kExitUsage;
        if (*compute)
            rc = cmd_compute(table, compute_args);
        else if (*table_cmd)
            rc = cmd_table(table, table_r, table_nmax, table_format);
        else if (*verify)
            rc = cmd_verify(table, verify_suite);
        else if (*period)
            rc = cmd_period(table, period_kind, period_r, period_d, period_horizon);
        else if (*valuation)
            rc = cmd_valuation(table, val_p, val_r, val_depth, val_scan, val_dot);
        else if (*solve) {
            if (!solve_factorial_args.empty())
                rc = cmd_solve_factorial(
                    table, static_cast<unsigned>(std::stoul(solve_factorial_args[0])),
                    solve_factorial_args[1], max_digits);
            else if (opt_pp->count() > 0)
                rc = cmd_solve_prime_power(table, solve_pp_cap);
            else
                throw std::invalid_argument("solve: choose --factorial or --prime-power-r2");
        } else if (*asympt)
            rc = cmd_asympt(table, as_r, as_n, as_digits, as_check, max_digits);
        else if (*density)
            rc = cmd_density(table, den_r, den_x);
        cache.flush(table);
        return rc;
    } catch (const precision_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const falsification_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    }
}
