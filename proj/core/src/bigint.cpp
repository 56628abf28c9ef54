#include "rderange/bigint.hpp"

#include <sstream>

namespace rderange {

Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Int binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Int binomial(const Int& n, unsigned long k) {
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

Int falling_factorial(const Int& n, unsigned long r) {
    Int acc = 1;
    Int term = n;
    for (unsigned long i = 0; i < r; ++i) {
        acc *= term;
        term -= 1;
    }
    return acc;
}

Int pow_int(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Rat pow_rat(const Rat& base, unsigned long exp) {
    Rat r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), exp);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), exp);
    r.canonicalize();
    return r;
}

bool is_integer(const Rat& q) {
    return mpz_cmp_ui(mpq_denref(q.get_mpq_t()), 1) == 0;
}

Int exact_quotient(const Int& a, const Int& b, const char* context) {
    if (b == 0 || !mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) {
        std::ostringstream os;
        os << context << ": " << b << " does not divide " << a;
        throw falsification_error(os.str());
    }
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

namespace {

// Digits of |x| rounded (or truncated) to `digits` significant figures, plus
// the decimal exponent e such that |x| ~ 0.d1d2... * 10^e.
std::pair<std::string, long> significant_digits(const Rat& x, unsigned digits, bool round) {
    Int num = abs(Int(x.get_num()));
    Int den = Int(x.get_den());

    // e = smallest integer with |x| < 10^e
    long e = 0;
    Int lo = num, hi = den;  // compare num/den against 10^e as num vs den*10^e
    if (num >= den) {
        while (lo >= hi) {
            hi *= 10;
            ++e;
        }
    } else {
        while (lo < hi) {
            lo *= 10;
            --e;
        }
        ++e;
        lo = num;
    }

    // scaled = round(|x| * 10^(digits - e)), a `digits`-digit integer
    Int scaled_num = num * pow_int(10, digits) * (e < 0 ? pow_int(10, -e) : Int(1));
    Int scaled_den = den * (e > 0 ? pow_int(10, e) : Int(1));
    Int q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
    if (round && rem * 2 >= scaled_den) q += 1;
    std::string s = q.get_str();
    if (s.size() > digits) {  // rounding carried into a new leading digit
        s.pop_back();
        ++e;
    }
    return {s, e};
}

std::string place_point(const std::string& digits_str, long e, bool negative) {
    std::string out;
    if (negative) out += '-';
    long n = static_cast<long>(digits_str.size());
    if (e <= 0) {
        out += "0.";
        out.append(-e, '0');
        out += digits_str;
    } else if (e >= n) {
        out += digits_str;
        out.append(e - n, '0');
    } else {
        out += digits_str.substr(0, e);
        out += '.';
        out += digits_str.substr(e);
    }
    return out;
}

}  // namespace

std::string to_decimal(const Rat& x, unsigned digits) {
    if (digits == 0) throw std::invalid_argument("to_decimal: digits must be >= 1");
    if (x == 0) return "0";
    auto [s, e] = significant_digits(x, digits, /*round=*/true);
    return place_point(s, e, x < 0);
}

std::string to_decimal_truncated(const Rat& x, unsigned digits) {
    if (digits == 0) throw std::invalid_argument("to_decimal_truncated: digits must be >= 1");
    if (x == 0) return "0";
    auto [s, e] = significant_digits(x, digits, /*round=*/false);
    return place_point(s, e, x < 0);
}

std::string to_decimal_fixed(const Rat& x, unsigned decimals) {
    Int num = abs(Int(x.get_num())) * pow_int(10, decimals);
    Int den = x.get_den();
    Int q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (rem * 2 >= den) q += 1;
    std::string s = q.get_str();
    if (s.size() <= decimals) s.insert(0, decimals + 1 - s.size(), '0');
    std::string out;
    if (x < 0 && q != 0) out += '-';
    out += s.substr(0, s.size() - decimals);
    if (decimals > 0) {
        out += '.';
        out += s.substr(s.size() - decimals);
    }
    return out;
}

}  // namespace rderange
