/**
 * @file oracle.hpp
 * @brief Brute-force permutation oracle for the r-derangement count.
 */
#pragma once

#include "rderange/bigint.hpp"

namespace rderange {

/// Largest n + r the oracle enumerates by default (10! permutations).
inline constexpr unsigned kOracleCap = 10;

/// Counts, by enumerating all (n+r)! permutations of {0, ..., n+r-1}, those
/// with no fixed point and with the first r letters in pairwise distinct
/// cycles. Equals D_r(n). Rejects n + r > cap.
Int oracle_count(unsigned r, unsigned n, unsigned cap = kOracleCap);

}  // namespace rderange
