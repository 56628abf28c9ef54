/**
 * @file derangements.hpp
 * @brief Exact computation of the derangement family: D(n), the r-derangement
 *        numbers D_r(n), the reduced numbers C_r(n) = D_r(n)/(n)_r, Lah
 *        numbers, and the related exact counts and expectations.
 *
 * D_r(n) counts fixed-point-free permutations of n+r letters whose first r
 * letters lie in pairwise distinct cycles. D_0(n) = D(n). D_r(n) = 0 for n < r.
 *
 * The central recurrence, valid for r >= 1 and n >= 1 with D_r(m) = 0 for
 * m < r, descends both in n and in r:
 *
 *     D_r(n) = r D_{r-1}(n-1) + (n-1) D_r(n-2) + (n+r-1) D_r(n-1)
 *
 * so a table of values is filled bottom-up for every order up to the one
 * requested. All arithmetic is exact.
 */
#pragma once

#include <shared_mutex>
#include <vector>

#include "rderange/bigint.hpp"

namespace rderange {

/**
 * Memoized triangle of D_r(n) values, one row per order r.
 *
 * Rows are contiguous prefixes: row r holds D_r(0..max_index(r)). Lookups
 * extend the table on demand. Reads take a shared lock and return by value,
 * so concurrent readers are safe; extension holds the exclusive lock.
 */
class DerangementTable {
public:
    /// Classical derangement number D(n) via the two-term recurrence.
    Int derangement(unsigned n) { return r_derangement(0, n); }

    /// D_r(n); 0 when n < r. r = 0 gives D(n).
    Int r_derangement(unsigned r, unsigned n);

    /// Reduced number C_r(n) = D_r(n) / (n)_r, always an exact quotient.
    /// Requires r >= 1 and n >= r.
    Int reduced(unsigned r, unsigned n);

    /// Ensure rows 0..r are filled through index n.
    void extend(unsigned r, unsigned n);

    /// Largest materialized index of row r, or -1 if the row is absent.
    long max_index(unsigned r) const;

    /// Copy of row r (D_r(0..max_index(r))). Empty if absent.
    std::vector<Int> row_copy(unsigned r) const;

    /// Install a previously exported row; `values` must start at n = 0 and be
    /// at least as long as the current row. Shape errors throw, content is
    /// trusted (meant for cache restore of self-produced data).
    void seed_row(unsigned r, const std::vector<Int>& values);

private:
    void extend_unlocked(unsigned r, unsigned n);

    mutable std::shared_mutex mutex_;
    std::vector<std::vector<Int>> rows_;
};

/// Closed alternating sum for D_r(n); requires r >= 1, n >= r.
/// Summed from j = n down to j = r in exact integer arithmetic.
Int r_derangement_closed(unsigned r, unsigned n);

/// Convolution identity: D_r(n) = sum_{j=s}^{n} C(j-1, s-1) n!/(n-j)! D_{r-s}(n-j),
/// valid for every split 1 <= s <= r <= n.
Int r_derangement_convolution(DerangementTable& table, unsigned r, unsigned s, unsigned n);

/// D_{r+1}(n) computed from the r-level sequence:
/// D_{r+1}(n) = ((n-r) D_r(n) + n D_r(n-1)) / (r+1), an exact division.
/// Requires n >= 1.
Int r_derangement_lift(DerangementTable& table, unsigned r, unsigned n);

/// Lah number L(n, k) = n!/k! C(n-1, k-1). 0 for k > n; k = 0 only with n = 0.
Int lah(unsigned long n, unsigned long k);

/// Checks (r+1)! L(n, r+1) == sum_{k=1}^{n} C(n,k) k D_r(n-k) exactly.
bool lah_identity_check(DerangementTable& table, unsigned r, unsigned n);

/// P_{n,r} = n!/r! * (n)_r, the number of permutations of n+r letters whose
/// first r letters are non-fixed and in distinct cycles. Requires n >= r.
Int pnr_count(unsigned r, unsigned n);

/// Expected number of fixed points of a uniform element of the P_{n,r}
/// permutation class, as an exact rational. Equals (n-r)/n. Requires n > r.
Rat fixed_point_expectation(DerangementTable& table, unsigned r, unsigned n);

}  // namespace rderange
