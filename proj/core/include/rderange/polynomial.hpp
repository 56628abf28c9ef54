/**
 * @file polynomial.hpp
 * @brief Dense integer-coefficient polynomials and the polynomials P_n(X)
 *        attached to the r-derangement numbers via D_r(n+r) = (n+r)_r P_n(r).
 */
#pragma once

#include <string>
#include <vector>

#include "rderange/bigint.hpp"

namespace rderange {

class DerangementTable;

/// Immutable-by-convention dense polynomial over Z, constant term first,
/// no stored trailing zero coefficients. The zero polynomial has degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;
    IntPolynomial(const Int& constant);  // NOLINT: implicit by design
    IntPolynomial(long constant) : IntPolynomial(Int(constant)) {}
    explicit IntPolynomial(std::vector<Int> coeffs);

    static IntPolynomial x();  // the monomial X

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const Int& coeff(std::size_t k) const;
    const std::vector<Int>& coeffs() const { return coeffs_; }

    Int eval(const Int& at) const;
    Rat eval(const Rat& at) const;

    /// P(X + delta), expanded exactly.
    IntPolynomial shifted(long delta) const;
    /// Coefficients reduced to canonical residues in [0, m).
    IntPolynomial reduced_mod(const Int& m) const;
    IntPolynomial derivative() const;
    IntPolynomial pow(unsigned e) const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const Int& c, const IntPolynomial& p);
    bool operator==(const IntPolynomial& other) const = default;

    std::string str() const;  // human-readable, e.g. "X^2 + X + 1"

private:
    void normalize();
    std::vector<Int> coeffs_;
};

/// P_n by the recurrence P_0 = 1, P_n(X) = (X+1) P_{n-1}(X+1) - P_{n-1}(X).
IntPolynomial p_poly(unsigned n);

/// P_n by the defining sum  sum_{j=0}^{n} (j+X)_j C(n,j) (-1)^{n-j}.
IntPolynomial p_poly_direct(unsigned n);

/// Checks D_r(n+r) == (n+r)_r * P_n(r) exactly.
bool p_identity_check(DerangementTable& table, unsigned r, unsigned n);

/// Checks P_n mod 2 == (X^2+X+1)^(n/2) for even n, X (X^2+X+1)^((n-1)/2) for odd n.
bool mod2_factor_check(unsigned n);

}  // namespace rderange
