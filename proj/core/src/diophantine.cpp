#include "rderange/diophantine.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rderange/asymptotics.hpp"
#include "rderange/derangements.hpp"
#include "rderange/modular.hpp"
#include "rderange/padic.hpp"

namespace rderange {

namespace {

// p^t for a possibly negative integer exponent.
Rat signed_prime_power(unsigned long p, long t) {
    if (t >= 0) return Rat(pow_int(Int(p), static_cast<unsigned long>(t)));
    Rat r(Int(1), pow_int(Int(p), static_cast<unsigned long>(-t)));
    r.canonicalize();
    return r;
}

void require_p3_inputs(DerangementTable& table, unsigned r, const Rat& q, unsigned long p,
                       unsigned long m) {
    if (r < 2) throw std::invalid_argument("p3: requires r >= 2");
    if (q <= 0) throw std::invalid_argument("p3: requires q > 0");
    if (m < 1) throw std::invalid_argument("p3: requires m >= 1");
    if (!classify_prime(table, p, r).in_a)
        throw std::invalid_argument("p3: p is not a certifying prime for this r");
}

// growth inequality, fully rational:
//   m <= p^(v/(r+1)) p^(m/((r+1)(p-1)))  <=>  m^((r+1)(p-1)) <= p^(v(p-1)+m)
bool growth_bound_holds_exact(unsigned r, unsigned long p, long v, unsigned long m) {
    Rat lhs = pow_rat(Rat(Int(m)), (r + 1) * (p - 1));
    Rat rhs = signed_prime_power(p, v * static_cast<long>(p - 1) + static_cast<long>(m));
    return lhs <= rhs;
}

// log inequality, raised to the power p-1:
//   m >= (p-1)(1 + log_p m + r log_p A - v)   with A = r (1 + e (2+q))
//   <=>  p^(m + (v-1)(p-1)) >= m^(p-1) A^(r(p-1))
// Only A needs an enclosure of e.
bool log_bound_holds(unsigned r, const Rat& q, unsigned long p, long v, unsigned long m,
                     unsigned max_digits) {
    const Rat lhs = signed_prime_power(
        p, static_cast<long>(m) + (v - 1) * static_cast<long>(p - 1));
    const Rat m_pow = pow_rat(Rat(Int(m)), p - 1);
    const unsigned long a_exp = static_cast<unsigned long>(r) * (p - 1);
    for (unsigned digits = 30; digits <= max_digits; digits *= 2) {
        RatInterval e = e_interval(digits);
        Rat a_lo = r * (1 + e.lo * (2 + q));
        Rat a_hi = r * (1 + e.hi * (2 + q));
        Rat rhs_lo = m_pow * pow_rat(a_lo, a_exp);
        Rat rhs_hi = m_pow * pow_rat(a_hi, a_exp);
        if (lhs > rhs_hi) return true;
        if (lhs < rhs_lo) return false;
    }
    throw precision_error("p3: e-enclosure cannot decide the logarithmic inequality");
}

long vp_value(const Rat& q, unsigned long p) {
    Valuation v = vp(q, p);
    return v.value();
}

}  // namespace

P3Inequalities p3_inequalities(DerangementTable& table, unsigned r, const Rat& q, unsigned long p,
                               unsigned long m, unsigned max_digits) {
    require_p3_inputs(table, r, q, p, m);
    const long v = vp_value(q, p);
    return P3Inequalities{log_bound_holds(r, q, p, v, m, max_digits),
                          growth_bound_holds_exact(r, p, v, m)};
}

unsigned long factorial_search_bound(DerangementTable& table, unsigned r, const Rat& q,
                                     unsigned long p, unsigned max_digits) {
    require_p3_inputs(table, r, q, p, 1);
    const long v = vp_value(q, p);
    constexpr unsigned long kRunLength = 64;
    constexpr unsigned long kScanCap = 1000000;

    unsigned long last_fail = 0;
    for (unsigned long m = 1; m <= kScanCap; ++m) {
        bool both = log_bound_holds(r, q, p, v, m, max_digits) &&
                    growth_bound_holds_exact(r, p, v, m);
        if (!both) {
            last_fail = m;
            continue;
        }
        if (m < last_fail + kRunLength) continue;

        // No-re-entry margins at m. Per step the log side's right-hand side
        // grows by (p-1) log_p(1+1/m) <= 1 iff (m+1)^(p-1) <= p m^(p-1), and
        // the growth side's right-hand side gains factor p^(1/((r+1)(p-1)))
        // >= (m+1)/m iff (m+1)^((r+1)(p-1)) <= p m^((r+1)(p-1)). Both margins
        // are monotone in m, so holding here means holding forever.
        Int m_int(m), m1_int(m + 1);
        bool margin_log = pow_int(m1_int, p - 1) <= p * pow_int(m_int, p - 1);
        bool margin_growth = pow_int(m1_int, (r + 1) * (p - 1)) <=
                             p * pow_int(m_int, (r + 1) * (p - 1));
        if (margin_log && margin_growth) return last_fail + 1;
    }
    throw std::runtime_error("factorial_search_bound: scan cap exceeded");
}

std::optional<unsigned> is_in_sequence(DerangementTable& table, unsigned r, const Int& v) {
    if (r < 1) throw std::invalid_argument("is_in_sequence: requires r >= 1");
    if (v <= 0) return std::nullopt;
    if (table.r_derangement(r, r) > v) return std::nullopt;
    // Exponential growth of the search window, then bisection: the sequence
    // (D_r(n))_{n >= r} is strictly increasing.
    unsigned lo = r, hi = r;
    unsigned span = 1;
    while (table.r_derangement(r, hi) < v) {
        lo = hi;
        hi += span;
        span *= 2;
    }
    while (lo < hi) {
        unsigned mid = lo + (hi - lo) / 2;
        if (table.r_derangement(r, mid) < v)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (table.r_derangement(r, lo) == v) return lo;
    return std::nullopt;
}

SolutionSet solve_factorial(DerangementTable& table, unsigned r, const Rat& q,
                            unsigned max_digits) {
    if (r < 2) throw std::invalid_argument("solve_factorial: requires r >= 2");
    SolutionSet out;
    {
        std::ostringstream os;
        os << "D_" << r << "(n) = " << q.get_str() << " * m!";
        out.equation = os.str();
    }
    if (q <= 0) {
        out.transcript.push_back("q <= 0: the sequence is positive from n = r, no solutions");
        return out;
    }

    constexpr unsigned kPrimeSearchCap = 25;
    std::optional<unsigned long> prime;
    {
        unsigned long candidate = 2;
        for (unsigned i = 0; i < kPrimeSearchCap; ++i) {
            while (!is_prime(candidate)) ++candidate;
            if (classify_prime(table, candidate, r).in_a) {
                prime = candidate;
                break;
            }
            ++candidate;
        }
    }
    if (!prime) {
        out.status = SolutionSet::Status::NoCertifyingPrime;
        out.transcript.push_back("no certifying prime found below cap; finiteness not certified");
        return out;
    }
    out.certifying_prime = prime;
    out.search_bound_m = factorial_search_bound(table, r, q, *prime, max_digits);

    for (unsigned long m = 1; m < out.search_bound_m; ++m) {
        Rat target = q * Rat(factorial(m));
        target.canonicalize();
        if (!is_integer(target)) continue;
        Int value(target.get_num());
        auto n = is_in_sequence(table, r, value);
        if (!n) continue;
        if (table.r_derangement(r, *n) != value)
            throw falsification_error("solve_factorial: candidate failed re-verification");
        out.solutions.emplace_back(*n, m);
        std::ostringstream os;
        os << "D_" << r << "(" << *n << ") = " << value.get_str() << " = " << q.get_str() << " * "
           << m << "!";
        out.transcript.push_back(os.str());
    }
    return out;
}

PrimePowerResult solve_prime_power_r2(DerangementTable& table, unsigned long n_cap) {
    if (n_cap < 4) throw std::invalid_argument("solve_prime_power_r2: requires n_cap >= 4");
    PrimePowerResult out;
    // n <= 3 directly: D_2(0) = D_2(1) = 0, D_2(2) = 2 = 2^1, D_2(3) = 12 = 2^2 * 3.
    if (table.r_derangement(2, 2) != 2 || table.r_derangement(2, 3) != 12)
        throw falsification_error("solve_prime_power_r2: unexpected small values");
    out.solutions.push_back({2, 2, 1});
    out.transcript.push_back("D_2(2) = 2 = 2^1");
    out.transcript.push_back("D_2(3) = 12 = 2^2 * 3, not a prime power");

    // For n >= 4, n(n-1)/2 divides D_2(n) and factors into two coprime
    // integers > 1, so D_2(n) cannot be a prime power.
    for (unsigned long n = 4; n <= n_cap; ++n) {
        unsigned long a, b;
        if (n % 2 == 0) {
            a = n / 2;
            b = n - 1;
        } else {
            a = (n - 1) / 2;
            b = n;
        }
        Int g;
        mpz_gcd_ui(g.get_mpz_t(), Int(a).get_mpz_t(), b);
        if (a <= 1 || b <= 1 || g != 1)
            throw falsification_error("solve_prime_power_r2: structural certificate failed");
    }
    out.verified_up_to = n_cap;
    {
        std::ostringstream os;
        os << "for 4 <= n <= " << n_cap
           << ": n(n-1)/2 | D_2(n) splits into coprime factors > 1";
        out.transcript.push_back(os.str());
    }
    return out;
}

std::string SolutionSet::to_json() const {
    nlohmann::json j;
    j["equation"] = equation;
    j["status"] = status == Status::Conclusive ? "conclusive" : "no_certifying_prime";
    j["solutions"] = nlohmann::json::array();
    for (auto [n, m] : solutions) j["solutions"].push_back({{"n", n}, {"m", m}});
    j["search_bound_m"] = search_bound_m;
    if (certifying_prime) j["certifying_prime"] = *certifying_prime;
    j["transcript"] = transcript;
    return j.dump(2);
}

std::string PrimePowerResult::to_json() const {
    nlohmann::json j;
    j["equation"] = "D_2(n) = p^k";
    j["solutions"] = nlohmann::json::array();
    for (auto [p, n, k] : solutions) j["solutions"].push_back({{"p", p}, {"n", n}, {"k", k}});
    j["verified_up_to"] = verified_up_to;
    j["transcript"] = transcript;
    return j.dump(2);
}

}  // namespace rderange
