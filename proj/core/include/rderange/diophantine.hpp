/**
 * @file diophantine.hpp
 * @brief Complete finite searches for D_r(n) = q * m! driven by the explicit
 *        finiteness inequalities, and the prime-power equation D_2(n) = p^k.
 *
 * For r >= 2 and a certifying prime p dividing no reduced number C_r(n), any
 * solution (n, m) of D_r(n) = q m! must fail one of two inequalities in m
 * (one logarithmic, one exponential). Both are decided exactly here by
 * raising to integer powers: only a rational enclosure of e remains, so every
 * boolean answer is certified. The returned bound m0 is the smallest index
 * from which both inequalities hold forever, so searching m < m0 is complete.
 */
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rderange/bigint.hpp"

namespace rderange {

class DerangementTable;

/// Both exclusion inequalities at a given m.
/// log_bound_holds:    m >= (p-1)(1 + log_p m + r log_p(r + e r (2+q)) - v_p(q))
/// growth_bound_holds: m <= p^(v_p(q)/(r+1)) * p^(m/((r+1)(p-1)))
/// When both hold, m belongs to no solution.
struct P3Inequalities {
    bool log_bound_holds = false;
    bool growth_bound_holds = false;
};

/// Evaluates both inequalities with certainty. p is re-verified to be a
/// certifying prime (member of A_r). Requires r >= 2, q > 0, m >= 1.
/// Throws precision_error if max_digits cannot decide.
P3Inequalities p3_inequalities(DerangementTable& table, unsigned r, const Rat& q, unsigned long p,
                               unsigned long m, unsigned max_digits = 10000);

/// Smallest m0 such that both inequalities hold for every m >= m0, certified
/// by exact no-re-entry margins on both sides plus a 64-long consecutive run.
unsigned long factorial_search_bound(DerangementTable& table, unsigned r, const Rat& q,
                                     unsigned long p, unsigned max_digits = 10000);

/// Result of a finite diophantine search.
struct SolutionSet {
    enum class Status { Conclusive, NoCertifyingPrime };

    std::string equation;
    Status status = Status::Conclusive;
    std::vector<std::pair<unsigned long, unsigned long>> solutions;  // (n, m)
    unsigned long search_bound_m = 0;
    std::optional<unsigned long> certifying_prime;
    std::vector<std::string> transcript;

    std::string to_json() const;
};

/// All solutions (n, m) of D_r(n) = q * m!. Requires r >= 2. For q <= 0 the
/// solution set is empty. A certifying prime is searched among the first 25
/// primes; if none is found the result reports NoCertifyingPrime instead of
/// claiming completeness. Every returned solution is re-verified exactly.
SolutionSet solve_factorial(DerangementTable& table, unsigned r, const Rat& q,
                            unsigned max_digits = 10000);

/// Result of the prime-power search for D_2(n) = p^k.
struct PrimePowerResult {
    std::vector<std::array<unsigned long, 3>> solutions;  // (p, n, k)
    unsigned long verified_up_to = 0;
    std::vector<std::string> transcript;

    std::string to_json() const;
};

/// Solves D_2(n) = p^k for n <= n_cap: n in {0,...,3} directly, and for
/// n >= 4 by the structural certificate that n(n-1)/2 divides D_2(n) and
/// splits into two coprime factors > 1. Requires n_cap >= 4.
PrimePowerResult solve_prime_power_r2(DerangementTable& table, unsigned long n_cap);

/// The unique n >= r with D_r(n) = v, if any, located by doubling then
/// bisection over the increasing sequence. Requires r >= 1.
std::optional<unsigned> is_in_sequence(DerangementTable& table, unsigned r, const Int& v);

}  // namespace rderange
