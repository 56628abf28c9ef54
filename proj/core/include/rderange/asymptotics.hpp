/**
 * @file asymptotics.hpp
 * @brief Saddle-point estimation of D_r(n)/n! and certification of the
 *        explicit error bound |D_r(n) - (n!/e) C(n-1,r)| < 2 n! C(n-1,r-1).
 *
 * Transcendental comparisons are decided with exact rational enclosures of e,
 * tightened until the answer is certain; decimal output is produced from
 * exact rationals at the last step.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rderange/bigint.hpp"

namespace rderange {

class DerangementTable;

/// Closed rational enclosure lo <= value <= hi.
struct RatInterval {
    Rat lo;
    Rat hi;
};

/// Enclosure of e with width below 10^-digits (partial sums of sum 1/k!).
RatInterval e_interval(unsigned digits);

/// Enclosure of 1/e from consecutive alternating partial sums.
RatInterval inv_e_interval(unsigned digits);

/// The rational partial sum sum_{k=0}^{K} (-1)^k/k! with K chosen so that
/// 1/(K+1)! < 10^-(digits+5).
Rat inv_e_series(unsigned digits);

/// Exact coefficients A(r, k) = sum_{i=0}^{min(r,k)} (-1)^i / (k-i)! * C(r, i)
/// of the principal part of the generating function at its singularity.
struct SaddleCoefficients {
    unsigned order = 0;
    std::vector<Rat> coeffs;  // A(r, 0..r)
};

SaddleCoefficients saddle_coeffs(unsigned r);

/// The exact rational  sum_{k=0}^{r} A(r,k) C(n+r-k, n).
/// For r = 2 this equals (n^2+n-1)/2, for r = 3 it is (n^3-4n+1)/6.
Rat saddle_weighted_sum(unsigned r, unsigned n);

/// A decimal approximation backed by the exact rational it was rounded from,
/// optionally paired with the exact reference value it approximates.
struct Estimate {
    Rat value;
    unsigned precision_digits = 0;
    std::optional<Rat> exact_reference;

    std::string decimal() const { return to_decimal(value, precision_digits); }
    std::string exact_decimal() const;
    /// |value - exact_reference|, exact. Requires the reference to be present.
    Rat abs_error() const;
};

/// Saddle-point estimate of D_r(n)/n! (or of D_r(n)/(n+r)! when `normalized`),
/// computed as inv_e_series(digits) * saddle_weighted_sum(r, n) with exact
/// rescaling; the exact ratio from the table is attached for comparison.
Estimate saddle_estimate(DerangementTable& table, unsigned r, unsigned n, unsigned digits,
                         bool normalized = false);

/// Certifies |D_r(n) - (n!/e) C(n-1,r)| < 2 n! C(n-1,r-1) with an e-enclosure,
/// doubling the working precision until the strict inequality is decided.
/// Throws precision_error if max_digits cannot separate the sides.
bool t2_bound_check(DerangementTable& table, unsigned r, unsigned n,
                    unsigned max_digits = 10000);

/// D_r(n)/(n+r)! as an exact rational (converges to 1/(r! e)).
Estimate limit_ratio(DerangementTable& table, unsigned r, unsigned n, unsigned digits);

}  // namespace rderange
