#include "rderange/asymptotics.hpp"

#include <stdexcept>

#include "rderange/derangements.hpp"

namespace rderange {

namespace {

// Smallest K with 1/(K+1)! < 10^-digits.
unsigned long series_length(unsigned digits) {
    Int target = pow_int(10, digits);
    Int fact = 1;
    unsigned long k = 0;
    while (fact <= target) {
        ++k;
        fact *= k + 1;  // (k+1)!
    }
    return k;
}

}  // namespace

RatInterval e_interval(unsigned digits) {
    // e - S_K < (K+2) / ((K+1) (K+1)!)
    unsigned long k = series_length(digits + 1);
    Rat sum = 0;
    Int fact = 1;
    for (unsigned long j = 0; j <= k; ++j) {
        if (j > 0) fact *= j;
        sum += Rat(1, fact);
    }
    Rat tail(Int(k + 2), Int(k + 1) * factorial(k + 1));
    tail.canonicalize();
    return {sum, sum + tail};
}

RatInterval inv_e_interval(unsigned digits) {
    // Alternating partial sums bracket 1/e; S_odd < 1/e < S_even.
    unsigned long k = series_length(digits + 1);
    if (k % 2 == 0) ++k;
    Rat odd_sum = 0;
    Int fact = 1;
    for (unsigned long j = 0; j <= k; ++j) {
        if (j > 0) fact *= j;
        Rat term(1, fact);
        if (j % 2 == 0)
            odd_sum += term;
        else
            odd_sum -= term;
    }
    Rat even_sum = odd_sum + Rat(1, factorial(k + 1));
    return {odd_sum, even_sum};
}

Rat inv_e_series(unsigned digits) {
    unsigned long k = series_length(digits + 5);
    Rat sum = 0;
    Int fact = 1;
    for (unsigned long j = 0; j <= k; ++j) {
        if (j > 0) fact *= j;
        Rat term(1, fact);
        if (j % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

SaddleCoefficients saddle_coeffs(unsigned r) {
    SaddleCoefficients sc;
    sc.order = r;
    sc.coeffs.reserve(r + 1);
    for (unsigned k = 0; k <= r; ++k) {
        Rat a = 0;
        for (unsigned i = 0; i <= std::min(r, k); ++i) {
            Rat term(binomial(static_cast<unsigned long>(r), i), factorial(k - i));
            term.canonicalize();
            if (i % 2 == 0)
                a += term;
            else
                a -= term;
        }
        sc.coeffs.push_back(a);
    }
    return sc;
}

Rat saddle_weighted_sum(unsigned r, unsigned n) {
    SaddleCoefficients sc = saddle_coeffs(r);
    Rat sum = 0;
    for (unsigned k = 0; k <= r; ++k)
        sum += sc.coeffs[k] * Rat(binomial(static_cast<unsigned long>(n) + r - k, n));
    return sum;
}

std::string Estimate::exact_decimal() const {
    if (!exact_reference) throw std::logic_error("Estimate: no exact reference attached");
    return to_decimal(*exact_reference, precision_digits);
}

Rat Estimate::abs_error() const {
    if (!exact_reference) throw std::logic_error("Estimate: no exact reference attached");
    return abs(Rat(value - *exact_reference));
}

Estimate saddle_estimate(DerangementTable& table, unsigned r, unsigned n, unsigned digits,
                         bool normalized) {
    if (n < r) throw std::invalid_argument("saddle_estimate: requires n >= r");
    if (digits < 1) throw std::invalid_argument("saddle_estimate: requires digits >= 1");
    Rat value = inv_e_series(digits) * saddle_weighted_sum(r, n);
    Rat exact(table.r_derangement(r, n), factorial(n));
    exact.canonicalize();
    if (normalized) {
        Rat scale(Int(1), falling_factorial(Int(n) + r, r));  // n!/(n+r)!
        scale.canonicalize();
        value *= scale;
        exact *= scale;
    }
    return Estimate{value, digits, exact};
}

bool t2_bound_check(DerangementTable& table, unsigned r, unsigned n, unsigned max_digits) {
    if (r < 1 || n < r) throw std::invalid_argument("t2_bound_check: requires n >= r >= 1");
    const Int d = table.r_derangement(r, n);
    const Int nf = factorial(n);
    const Int center = nf * binomial(static_cast<unsigned long>(n) - 1, r);
    const Int margin = 2 * nf * binomial(static_cast<unsigned long>(n) - 1, r - 1);

    // |D e - center| < margin e, decided with an enclosure of e.
    for (unsigned digits = 30; digits <= max_digits; digits *= 2) {
        RatInterval e = e_interval(digits);
        Rat lhs_lo = d * e.lo - center;
        Rat lhs_hi = d * e.hi - center;
        Rat abs_lo, abs_hi;
        if (lhs_lo >= 0) {
            abs_lo = lhs_lo;
            abs_hi = lhs_hi;
        } else if (lhs_hi <= 0) {
            abs_lo = -lhs_hi;
            abs_hi = -lhs_lo;
        } else {
            abs_lo = 0;
            abs_hi = std::max(Rat(-lhs_lo), lhs_hi);
        }
        if (abs_hi < margin * e.lo) return true;
        if (abs_lo > margin * e.hi) return false;
    }
    throw precision_error("t2_bound_check: enclosure cannot separate the sides");
}

Estimate limit_ratio(DerangementTable& table, unsigned r, unsigned n, unsigned digits) {
    if (n < r) throw std::invalid_argument("limit_ratio: requires n >= r");
    Rat ratio(table.r_derangement(r, n), factorial(static_cast<unsigned long>(n) + r));
    ratio.canonicalize();
    return Estimate{ratio, digits, ratio};
}

}  // namespace rderange
