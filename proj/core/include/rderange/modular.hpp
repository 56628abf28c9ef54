/**
 * @file modular.hpp
 * @brief Residue sequences of D_r(n) and C_r(n), periodicity certification,
 *        the congruence polynomials f_{r,d} and fhat_{r,d}, and prime
 *        classification by divisibility of the reduced numbers.
 *
 * Both remainder sequences satisfy a signed invariance: whenever
 * n1 = n2 (mod d), (-1)^n1 a_{n1} = (-1)^n2 a_{n2} (mod d). Consequently the
 * plain remainder sequence is periodic with period d for even d and 2d for
 * odd d. Certification checks both claims over a finite horizon against
 * exactly computed values.
 */
#pragma once

#include <optional>
#include <vector>

#include "rderange/bigint.hpp"
#include "rderange/polynomial.hpp"

namespace rderange {

class DerangementTable;

enum class SequenceKind { D, C };

/// First index of the chosen sequence (0 for D_r, r for C_r).
unsigned first_index(SequenceKind kind, unsigned r);

/// Remainders of the chosen sequence mod d for n from the first index to
/// `upto` inclusive, reduced from exact values.
std::vector<unsigned long> residue_sequence(DerangementTable& table, SequenceKind kind, unsigned r,
                                            unsigned long d, unsigned upto);

/// Outcome of a periodicity certification run.
struct ResidueCertificate {
    SequenceKind kind = SequenceKind::D;
    unsigned r = 0;
    unsigned long modulus = 1;
    unsigned long claimed_period = 1;         // d for even d, 2d for odd d
    std::vector<unsigned long> residues;      // one full claimed period, from first_index
    unsigned verified_up_to = 0;              // largest index checked
};

/// Verifies, for all index pairs congruent mod d within the horizon, the
/// signed congruence and plain periodicity with the claimed period, then
/// returns the certificate. The horizon is horizon_multiple * d indices past
/// the first and must cover at least 3 claimed periods. A violation (which
/// would falsify the underlying theorem) throws falsification_error naming
/// the offending pair.
ResidueCertificate certify_period(DerangementTable& table, SequenceKind kind, unsigned r,
                                  unsigned long d, unsigned horizon_multiple);

/// f_{r,d}(X) = sum_{j=r}^{d-1} (-1)^j C(j, r) (X)_j;  zero when d <= r.
/// Satisfies D_r(n) = (-1)^n f_{r,d}(n) (mod d) for all n >= 0.
IntPolynomial f_polynomial(unsigned r, unsigned long d);

/// fhat_{r,d}(X) = sum_{j=r}^{r+d-1} C(j, r) (-1)^j (X-r)_{j-r}, r >= 1, d >= 1.
/// Satisfies C_r(n) = (-1)^n fhat_{r,d}(n) (mod d) for all n >= r, and
/// f_{r,r+d}(X) = X(X-1)...(X-r+1) fhat_{r,d}(X).
IntPolynomial fhat_polynomial(unsigned r, unsigned long d);

/// Membership of a prime in A_r = { p : p divides no C_r(n), n >= r }.
/// By periodicity it suffices to inspect n in [r, p+r-1]; the witness is the
/// smallest divisible index when there is one.
struct PrimeClassification {
    unsigned long p = 0;
    unsigned r = 0;
    bool in_a = false;
    std::optional<unsigned> witness;
};

PrimeClassification classify_prime(DerangementTable& table, unsigned long p, unsigned r);

/// (# primes <= x in A_r) / (# primes <= x), exact. Requires x >= 2.
Rat a_r_density(DerangementTable& table, unsigned r, unsigned long x);

std::vector<unsigned long> prime_sieve(unsigned long x);

bool is_prime(unsigned long p);

}  // namespace rderange
