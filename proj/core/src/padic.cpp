#include "rderange/padic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rderange/derangements.hpp"
#include "rderange/modular.hpp"

namespace rderange {

namespace {

constexpr unsigned long kMaxModulus = 1u << 20;

void require_prime(unsigned long p, const char* who) {
    if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": p must be prime");
}

unsigned smallest_representative(const Int& cls, const Int& modulus, unsigned r) {
    Int rep = cls;
    if (rep < r) {
        Int deficit = r - rep;
        Int steps = (deficit + modulus - 1) / modulus;
        rep += steps * modulus;
    }
    if (!rep.fits_uint_p() || rep.get_ui() > kMaxModulus)
        throw std::invalid_argument("lifting: representative out of supported range");
    return static_cast<unsigned>(rep.get_ui());
}

}  // namespace

long Valuation::value() const {
    if (infinite_) throw std::logic_error("Valuation: +infinity has no finite value");
    return value_;
}

Valuation vp(const Int& x, unsigned long p) {
    require_prime(p, "vp");
    if (x == 0) return Valuation::infinity();
    Int reduced, prime(p);
    mp_bitcnt_t v = mpz_remove(reduced.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t());
    return Valuation::of(static_cast<long>(v));
}

Valuation vp(const Rat& x, unsigned long p) {
    require_prime(p, "vp");
    if (x == 0) return Valuation::infinity();
    return Valuation::of(vp(Int(x.get_num()), p).value() - vp(Int(x.get_den()), p).value());
}

Valuation vp_factorial(unsigned long m, unsigned long p) {
    require_prime(p, "vp_factorial");
    unsigned long digit_sum = 0;
    for (unsigned long t = m; t > 0; t /= p) digit_sum += t % p;
    return Valuation::of(static_cast<long>((m - digit_sum) / (p - 1)));
}

Int q_hat(DerangementTable& table, unsigned long p, unsigned r, unsigned n_k) {
    require_prime(p, "q_hat");
    if (r < 1 || n_k < r) throw std::invalid_argument("q_hat: requires n_k >= r >= 1");
    Int next = table.reduced(r, n_k + static_cast<unsigned>(p));
    if (p % 2 != 0) next = -next;
    Int diff = next - table.reduced(r, n_k);
    return exact_quotient(diff, Int(p), "q_hat divisibility");
}

const char* to_string(LiftCase c) {
    switch (c) {
        case LiftCase::UniqueLift: return "unique_lift";
        case LiftCase::AllLift: return "all_lift";
        case LiftCase::NoneLift: return "none_lift";
    }
    return "?";
}

LiftOutcome hensel_step(DerangementTable& table, unsigned long p, unsigned r, unsigned k,
                        unsigned n_k) {
    require_prime(p, "hensel_step");
    if (k < 1) throw std::invalid_argument("hensel_step: requires level k >= 1");
    if (r < 1 || n_k < r) throw std::invalid_argument("hensel_step: requires n_k >= r >= 1");
    const Int pk = pow_int(Int(p), k);
    const Int value = table.reduced(r, n_k);
    if (!mpz_divisible_p(value.get_mpz_t(), pk.get_mpz_t()))
        throw std::invalid_argument("hensel_step: p^k does not divide C_r(n_k)");

    const Int pk1 = pk * static_cast<long>(p);
    const Int qh = q_hat(table, p, r, n_k);
    if (vp(qh, p).value() > 0) {
        if (mpz_divisible_p(value.get_mpz_t(), pk1.get_mpz_t()))
            return LiftOutcome{LiftCase::AllLift, Int(0)};
        return LiftOutcome{LiftCase::NoneLift, Int(0)};
    }
    // n_{k+1} = n_k - C_r(n_k) / qhat, evaluated mod p^(k+1): qhat is a unit.
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), qh.get_mpz_t(), pk1.get_mpz_t()) == 0)
        throw falsification_error("hensel_step: unit qhat not invertible");
    Int lifted = Int(n_k) - value * inv;
    Int cls;
    mpz_mod(cls.get_mpz_t(), lifted.get_mpz_t(), pk1.get_mpz_t());
    return LiftOutcome{LiftCase::UniqueLift, cls};
}

namespace {

void verify_node(DerangementTable& table, ValuationNode& node, unsigned scan_bound) {
    unsigned n = smallest_representative(node.residue_class, node.modulus, node.r);
    if (!node.modulus.fits_uint_p()) throw std::invalid_argument("lifting: modulus too large");
    const unsigned step = static_cast<unsigned>(node.modulus.get_ui());
    unsigned count = 0;
    for (; n <= scan_bound; n += step) {
        if (!vp(table.reduced(node.r, n), node.p).at_least(node.level)) {
            std::ostringstream os;
            os << "valuation_tree: member n=" << n << " of class " << node.residue_class.get_str()
               << " mod " << node.modulus.get_str() << " has v_p < " << node.level;
            throw falsification_error(os.str());
        }
        ++count;
    }
    node.verified_members = count;
}

}  // namespace

std::vector<ValuationNode> valuation_tree(DerangementTable& table, unsigned long p, unsigned r,
                                          unsigned max_level, unsigned scan_bound) {
    require_prime(p, "valuation_tree");
    if (r < 1 || max_level < 1) throw std::invalid_argument("valuation_tree: requires r >= 1, depth >= 1");

    std::vector<ValuationNode> out;
    std::vector<ValuationNode> frontier;
    for (unsigned n1 = r; n1 <= r + static_cast<unsigned>(p) - 1; ++n1) {
        if (vp(table.reduced(r, n1), p).at_least(1)) {
            ValuationNode node;
            node.p = p;
            node.r = r;
            node.level = 1;
            node.modulus = Int(p);
            node.residue_class = Int(n1 % p);
            frontier.push_back(std::move(node));
        }
    }

    while (!frontier.empty()) {
        std::sort(frontier.begin(), frontier.end(),
                  [](const ValuationNode& a, const ValuationNode& b) {
                      return a.residue_class < b.residue_class;
                  });
        std::vector<ValuationNode> next;
        for (ValuationNode& node : frontier) {
            verify_node(table, node, scan_bound);
            if (node.level < max_level) {
                unsigned rep = smallest_representative(node.residue_class, node.modulus, r);
                LiftOutcome outcome = hensel_step(table, p, r, node.level, rep);
                node.step = outcome.kind;
                auto child = [&](Int cls) {
                    ValuationNode c;
                    c.p = p;
                    c.r = r;
                    c.level = node.level + 1;
                    c.modulus = node.modulus * static_cast<long>(p);
                    c.residue_class = std::move(cls);
                    next.push_back(std::move(c));
                };
                switch (outcome.kind) {
                    case LiftCase::UniqueLift:
                        child(outcome.lifted_class);
                        break;
                    case LiftCase::AllLift:
                        for (unsigned long i = 0; i < p; ++i)
                            child(node.residue_class + Int(i) * node.modulus);
                        break;
                    case LiftCase::NoneLift:
                        break;
                }
            }
            out.push_back(std::move(node));
        }
        frontier = std::move(next);
    }
    return out;
}

bool pseudo_decomposition_check(DerangementTable& table, unsigned long p, unsigned r, unsigned k,
                                unsigned n_lo, unsigned n_hi) {
    require_prime(p, "pseudo_decomposition_check");
    if (k < 2) throw std::invalid_argument("pseudo_decomposition_check: requires k >= 2");
    if (r < 1 || n_lo < r) throw std::invalid_argument("pseudo_decomposition_check: requires n_lo >= r >= 1");
    Int pk_big = pow_int(Int(p), k);
    if (!pk_big.fits_ulong_p() || pk_big.get_ui() > kMaxModulus)
        throw std::invalid_argument("pseudo_decomposition_check: p^k too large");
    const unsigned long pk = pk_big.get_ui();

    const IntPolynomial fh_k = fhat_polynomial(r, pk);
    const IntPolynomial fh_2 = fhat_polynomial(r, p * p);
    const IntPolynomial dk = fh_k.derivative();
    const IntPolynomial d2 = fh_2.derivative();

    const Int modk(pk_big), modp(p);
    for (unsigned n = n_lo; n <= n_hi; ++n) {
        Int rhs = fh_k.eval(Int(n));
        if (n % 2 != 0) rhs = -rhs;
        Int lhs = table.reduced(r, n) - rhs;
        if (!mpz_divisible_p(lhs.get_mpz_t(), modk.get_mpz_t())) return false;
        Int ddiff = dk.eval(Int(n)) - d2.eval(Int(n));
        if (!mpz_divisible_p(ddiff.get_mpz_t(), modp.get_mpz_t())) return false;
    }
    return true;
}

std::string tree_to_json(const std::vector<ValuationNode>& nodes) {
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    for (const auto& n : nodes) {
        nlohmann::json jn;
        jn["p"] = n.p;
        jn["r"] = n.r;
        jn["level"] = n.level;
        jn["modulus"] = n.modulus.get_str();
        jn["class"] = n.residue_class.get_str();
        if (n.step) jn["case"] = to_string(*n.step);
        jn["verified_members"] = n.verified_members;
        j["nodes"].push_back(std::move(jn));
    }
    return j.dump(2);
}

std::string tree_to_dot(const std::vector<ValuationNode>& nodes) {
    std::ostringstream os;
    os << "digraph valuation_tree {\n";
    auto id = [](const ValuationNode& n) {
        return "n" + std::to_string(n.level) + "_" + n.residue_class.get_str();
    };
    for (const auto& n : nodes) {
        os << "  " << id(n) << " [label=\"n = " << n.residue_class.get_str() << " mod "
           << n.modulus.get_str();
        if (n.step) os << ", " << to_string(*n.step);
        os << "\"];\n";
    }
    for (const auto& child : nodes) {
        if (child.level < 2) continue;
        for (const auto& parent : nodes) {
            if (parent.level != child.level - 1) continue;
            Int diff = child.residue_class - parent.residue_class;
            if (mpz_divisible_p(diff.get_mpz_t(), parent.modulus.get_mpz_t())) {
                os << "  " << id(parent) << " -> " << id(child) << ";\n";
                break;
            }
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace rderange
