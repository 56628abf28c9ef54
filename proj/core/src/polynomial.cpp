#include "rderange/polynomial.hpp"

#include <sstream>
#include <stdexcept>

#include "rderange/derangements.hpp"

namespace rderange {

namespace {
const Int kZero = 0;
}

IntPolynomial::IntPolynomial(const Int& constant) {
    if (constant != 0) coeffs_.push_back(constant);
}

IntPolynomial::IntPolynomial(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPolynomial IntPolynomial::x() { return IntPolynomial(std::vector<Int>{Int(0), Int(1)}); }

const Int& IntPolynomial::coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : kZero;
}

void IntPolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Int IntPolynomial::eval(const Int& at) const {
    Int acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
    return acc;
}

Rat IntPolynomial::eval(const Rat& at) const {
    Rat acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
    return acc;
}

IntPolynomial IntPolynomial::shifted(long delta) const {
    // result[k] = sum_{j >= k} a_j C(j, k) delta^(j-k)
    if (coeffs_.empty() || delta == 0) return *this;
    const std::size_t n = coeffs_.size();
    std::vector<Int> out(n, Int(0));
    Int d(delta);
    for (std::size_t j = 0; j < n; ++j) {
        Int pow = 1;
        for (std::size_t k = j + 1; k-- > 0;) {  // k = j down to 0, pow = delta^(j-k)
            out[k] += coeffs_[j] * binomial(static_cast<unsigned long>(j), k) * pow;
            pow *= d;
        }
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::reduced_mod(const Int& m) const {
    if (m <= 0) throw std::invalid_argument("reduced_mod: modulus must be positive");
    std::vector<Int> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        mpz_mod(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), m.get_mpz_t());
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return IntPolynomial();
    std::vector<Int> out(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = k * coeffs_[k];
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::pow(unsigned e) const {
    IntPolynomial acc(Int(1));
    for (unsigned i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] -= b.coeffs_[i];
    return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.coeffs_.empty() || b.coeffs_.empty()) return IntPolynomial();
    std::vector<Int> out(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const Int& c, const IntPolynomial& p) {
    std::vector<Int> out(p.coeffs_.size());
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) out[i] = c * p.coeffs_[i];
    return IntPolynomial(std::move(out));
}

std::string IntPolynomial::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const Int& c = coeffs_[k];
        if (c == 0) continue;
        Int a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (k == 0 || a != 1) os << a.get_str();
        if (k >= 1) {
            if (a != 1) os << "*";
            os << "X";
            if (k >= 2) os << "^" << k;
        }
    }
    return os.str();
}

IntPolynomial p_poly(unsigned n) {
    IntPolynomial p(Int(1));
    const IntPolynomial x_plus_1(std::vector<Int>{Int(1), Int(1)});
    for (unsigned i = 1; i <= n; ++i) p = x_plus_1 * p.shifted(1) - p;
    return p;
}

IntPolynomial p_poly_direct(unsigned n) {
    IntPolynomial sum;
    for (unsigned j = 0; j <= n; ++j) {
        // (j+X)_j = (X+j)(X+j-1)...(X+1)
        IntPolynomial prod(Int(1));
        for (unsigned i = 1; i <= j; ++i)
            prod = prod * IntPolynomial(std::vector<Int>{Int(i), Int(1)});
        Int c = binomial(static_cast<unsigned long>(n), j);
        if ((n - j) % 2 != 0) c = -c;
        sum = sum + c * prod;
    }
    return sum;
}

bool p_identity_check(DerangementTable& table, unsigned r, unsigned n) {
    Int lhs = table.r_derangement(r, n + r);
    Int rhs = falling_factorial(Int(n) + r, r) * p_poly(n).eval(Int(r));
    return lhs == rhs;
}

bool mod2_factor_check(unsigned n) {
    IntPolynomial lhs = p_poly(n).reduced_mod(2);
    const IntPolynomial trinomial(std::vector<Int>{Int(1), Int(1), Int(1)});
    IntPolynomial rhs = trinomial.pow(n / 2);
    if (n % 2 != 0) rhs = rhs * IntPolynomial::x();
    return lhs == rhs.reduced_mod(2);
}

}  // namespace rderange
