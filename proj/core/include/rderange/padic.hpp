/**
 * @file padic.hpp
 * @brief p-adic valuations of the reduced numbers C_r(n) and the one-step
 *        Hensel lifting of residue classes carrying growing valuation.
 *
 * The sequence (fhat_{r,p^k}, (-1)^n) is a pseudo-polynomial decomposition of
 * (C_r(n))_{n>=r} modulo p, which makes a Hensel-type lemma applicable: given
 * a class n_k mod p^k on which p^k | C_r(n), the quantity
 *
 *     qhat_p(n_k) = ((-1)^p C_r(n_k + p) - C_r(n_k)) / p
 *
 * decides how the class refines mod p^(k+1): a unit qhat gives exactly one
 * lifting subclass, a non-unit qhat lifts all of them or none, depending on
 * whether p^(k+1) | C_r(n_k).
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rderange/bigint.hpp"

namespace rderange {

class DerangementTable;

/// A p-adic valuation: an integer, or +infinity (the valuation of 0).
class Valuation {
public:
    static Valuation infinity() { return Valuation(true, 0); }
    static Valuation of(long v) { return Valuation(false, v); }

    bool is_infinite() const { return infinite_; }
    long value() const;

    /// value >= k, with infinity above everything.
    bool at_least(long k) const { return infinite_ || value_ >= k; }

    bool operator==(const Valuation&) const = default;

private:
    Valuation(bool inf, long v) : infinite_(inf), value_(v) {}
    bool infinite_;
    long value_;
};

/// Exact p-adic valuation; p must be prime. vp(0) = +infinity.
Valuation vp(const Int& x, unsigned long p);
/// Valuation of a rational (may be negative).
Valuation vp(const Rat& x, unsigned long p);

/// v_p(m!) by Legendre's digit-sum formula (m - s_p(m)) / (p - 1).
Valuation vp_factorial(unsigned long m, unsigned long p);

/// qhat_p(n_k) = ((-1)^p C_r(n_k + p) - C_r(n_k)) / p. The divisibility by p
/// is guaranteed by the signed periodicity; its failure throws
/// falsification_error. Requires p prime and n_k >= r.
Int q_hat(DerangementTable& table, unsigned long p, unsigned r, unsigned n_k);

enum class LiftCase { UniqueLift, AllLift, NoneLift };

const char* to_string(LiftCase c);

/// Result of one lifting step from level k to level k+1.
struct LiftOutcome {
    LiftCase kind = LiftCase::NoneLift;
    Int lifted_class;  // residue mod p^(k+1); meaningful only for UniqueLift
};

/// One Hensel step: given n_k >= r with p^k | C_r(n_k), classifies how the
/// class of n_k mod p^k refines mod p^(k+1). Rejects inputs with
/// p^k not dividing C_r(n_k).
LiftOutcome hensel_step(DerangementTable& table, unsigned long p, unsigned r, unsigned k,
                        unsigned n_k);

/// A certified node of the lifting tree: every sampled n >= r congruent to
/// residue_class mod p^level has v_p(C_r(n)) >= level.
struct ValuationNode {
    unsigned long p = 0;
    unsigned r = 0;
    unsigned level = 0;
    Int modulus;         // p^level
    Int residue_class;   // in [0, modulus)
    std::optional<LiftCase> step;  // outcome of the step taken at this node
    unsigned verified_members = 0;
};

/// Builds the lifting tree for (p, r): level-1 roots are the n_1 in
/// [r, r+p-1] with p | C_r(n_1) (a full scan of one period), then each node
/// is refined by hensel_step until max_level or a NoneLift. Every emitted
/// node is verified against direct valuations of all class members up to
/// scan_bound; a violation throws falsification_error. Nodes are emitted in
/// (level, residue) order.
std::vector<ValuationNode> valuation_tree(DerangementTable& table, unsigned long p, unsigned r,
                                          unsigned max_level, unsigned scan_bound);

/// Checks both defining congruences of the pseudo-polynomial decomposition at
/// modulus p^k over n in [n_lo, n_hi]:
///   C_r(n) = (-1)^n fhat_{r,p^k}(n)   (mod p^k)
///   fhat'_{r,p^k}(n) = fhat'_{r,p^2}(n) (mod p)
/// Requires k >= 2 and n_lo >= r.
bool pseudo_decomposition_check(DerangementTable& table, unsigned long p, unsigned r, unsigned k,
                                unsigned n_lo, unsigned n_hi);

/// JSON rendering of a lifting tree (big integers as decimal strings).
std::string tree_to_json(const std::vector<ValuationNode>& nodes);

/// Graphviz DOT rendering; node labels read "n = c mod p^k, case".
std::string tree_to_dot(const std::vector<ValuationNode>& nodes);

}  // namespace rderange
