/**
 * @file bigint.hpp
 * @brief Exact arithmetic substrate: GMP-backed integers and rationals,
 *        common combinatorial helpers, and decimal formatting.
 *
 * All sequence values in this library are exact; no floating point is used
 * anywhere on a correctness-relevant path. Decimal strings are produced from
 * exact rationals in the very last step.
 */
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace rderange {

/// Arbitrary-precision integer. Nonnegative by contract wherever it holds a count.
using Int = mpz_class;

/// Exact rational, kept canonical (lowest terms, positive denominator) by GMP.
using Rat = mpq_class;

/// Raised when an iterative-precision comparison hits its digit cap undecided.
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a computation contradicts a certified property of the sequences
/// (e.g. an exact division that must succeed does not). Always a bug if thrown.
class falsification_error : public std::logic_error {
public:
    explicit falsification_error(const std::string& what) : std::logic_error(what) {}
};

Int factorial(unsigned long n);

/// binomial(n, k); 0 for k > n.
Int binomial(unsigned long n, unsigned long k);
Int binomial(const Int& n, unsigned long k);

/// Falling factorial (n)_r = n (n-1) ... (n-r+1), with (n)_0 = 1.
Int falling_factorial(const Int& n, unsigned long r);

Int pow_int(const Int& base, unsigned long exp);
Rat pow_rat(const Rat& base, unsigned long exp);

/// True iff the canonical denominator is 1.
bool is_integer(const Rat& q);

/// Exact quotient a / b; throws falsification_error when b does not divide a.
Int exact_quotient(const Int& a, const Int& b, const char* context);

/// x rounded to `digits` significant digits, plain positional notation
/// (no exponent), round-half-away-from-zero. digits >= 1.
std::string to_decimal(const Rat& x, unsigned digits);

/// x truncated (not rounded) to `digits` significant digits.
std::string to_decimal_truncated(const Rat& x, unsigned digits);

/// x rounded to `decimals` digits after the point.
std::string to_decimal_fixed(const Rat& x, unsigned decimals);

}  // namespace rderange
