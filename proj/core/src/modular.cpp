#include "rderange/modular.hpp"

#include <sstream>
#include <stdexcept>

#include "rderange/derangements.hpp"

namespace rderange {

namespace {

unsigned long mod_ul(const Int& v, unsigned long d) {
    Int m;
    mpz_mod_ui(m.get_mpz_t(), v.get_mpz_t(), d);
    return m.get_ui();
}

Int sequence_value(DerangementTable& table, SequenceKind kind, unsigned r, unsigned n) {
    return kind == SequenceKind::D ? table.r_derangement(r, n) : table.reduced(r, n);
}

}  // namespace

unsigned first_index(SequenceKind kind, unsigned r) { return kind == SequenceKind::D ? 0 : r; }

std::vector<unsigned long> residue_sequence(DerangementTable& table, SequenceKind kind, unsigned r,
                                            unsigned long d, unsigned upto) {
    if (d < 1) throw std::invalid_argument("residue_sequence: requires d >= 1");
    const unsigned first = first_index(kind, r);
    if (upto < first) throw std::invalid_argument("residue_sequence: upto below first index");
    table.extend(r, upto);
    std::vector<unsigned long> out;
    out.reserve(upto - first + 1);
    for (unsigned n = first; n <= upto; ++n) out.push_back(mod_ul(sequence_value(table, kind, r, n), d));
    return out;
}

ResidueCertificate certify_period(DerangementTable& table, SequenceKind kind, unsigned r,
                                  unsigned long d, unsigned horizon_multiple) {
    if (d < 1) throw std::invalid_argument("certify_period: requires d >= 1");
    const unsigned long claimed = (d % 2 == 0) ? d : 2 * d;
    if (horizon_multiple * d < 3 * claimed)
        throw std::invalid_argument("certify_period: horizon must cover >= 3 claimed periods");

    const unsigned first = first_index(kind, r);
    const unsigned last = first + static_cast<unsigned>(horizon_multiple * d);
    std::vector<unsigned long> res = residue_sequence(table, kind, r, d, last);

    auto violation = [&](unsigned n1, unsigned n2, const char* what) {
        std::ostringstream os;
        os << "certify_period: " << what << " falsified at indices (" << n1 << ", " << n2
           << ") for r=" << r << " d=" << d;
        throw falsification_error(os.str());
    };

    // Signed invariance: compare every member of each residue class mod d
    // against the first member of its class.
    for (unsigned long c = 0; c < d; ++c) {
        unsigned base = first + static_cast<unsigned>(c >= (first % d) ? c - first % d
                                                                       : c + d - first % d);
        if (base > last) continue;
        const unsigned long a0 = res[base - first];
        for (unsigned n = base + d; n <= last; n += d) {
            unsigned long a = res[n - first];
            // (-1)^base a0 = (-1)^n a (mod d)
            unsigned long lhs = (base % 2 == 0) ? a0 : (d - a0) % d;
            unsigned long rhs = (n % 2 == 0) ? a : (d - a) % d;
            if (lhs != rhs) violation(base, n, "signed invariance");
        }
    }
    // Plain periodicity with the claimed period.
    for (unsigned n = first; n + claimed <= last; ++n)
        if (res[n - first] != res[n - first + claimed]) violation(n, n + claimed, "periodicity");

    ResidueCertificate cert;
    cert.kind = kind;
    cert.r = r;
    cert.modulus = d;
    cert.claimed_period = claimed;
    cert.residues.assign(res.begin(), res.begin() + static_cast<long>(claimed));
    cert.verified_up_to = last;
    return cert;
}

IntPolynomial f_polynomial(unsigned r, unsigned long d) {
    IntPolynomial sum;
    IntPolynomial fall(Int(1));  // (X)_j
    for (unsigned long j = 0; j < d; ++j) {
        if (j > 0) fall = fall * IntPolynomial(std::vector<Int>{Int(-(static_cast<long>(j) - 1)), Int(1)});
        if (j < r) continue;
        Int c = binomial(j, r);
        if (j % 2 != 0) c = -c;
        sum = sum + c * fall;
    }
    return sum;
}

IntPolynomial fhat_polynomial(unsigned r, unsigned long d) {
    if (r < 1 || d < 1) throw std::invalid_argument("fhat_polynomial: requires r >= 1, d >= 1");
    IntPolynomial sum;
    IntPolynomial fall(Int(1));  // (X-r)_{j-r}
    for (unsigned long j = r; j <= r + d - 1; ++j) {
        if (j > r)
            fall = fall * IntPolynomial(std::vector<Int>{-(Int(r) + (j - 1 - r)), Int(1)});
        Int c = binomial(j, r);
        if (j % 2 != 0) c = -c;
        sum = sum + c * fall;
    }
    return sum;
}

PrimeClassification classify_prime(DerangementTable& table, unsigned long p, unsigned r) {
    if (!is_prime(p)) throw std::invalid_argument("classify_prime: p must be prime");
    if (r < 1) throw std::invalid_argument("classify_prime: requires r >= 1");
    PrimeClassification pc;
    pc.p = p;
    pc.r = r;
    pc.in_a = true;
    table.extend(r, r + static_cast<unsigned>(p) - 1);
    for (unsigned n = r; n <= r + p - 1; ++n) {
        if (mod_ul(table.reduced(r, n), p) == 0) {
            pc.in_a = false;
            pc.witness = n;
            break;
        }
    }
    return pc;
}

Rat a_r_density(DerangementTable& table, unsigned r, unsigned long x) {
    if (x < 2) throw std::invalid_argument("a_r_density: requires x >= 2");
    auto primes = prime_sieve(x);
    unsigned long in_a = 0;
    for (unsigned long p : primes)
        if (classify_prime(table, p, r).in_a) ++in_a;
    Rat density(Int(in_a), Int(primes.size()));
    density.canonicalize();
    return density;
}

std::vector<unsigned long> prime_sieve(unsigned long x) {
    std::vector<unsigned long> primes;
    if (x < 2) return primes;
    std::vector<bool> composite(x + 1, false);
    for (unsigned long i = 2; i <= x; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (unsigned long j = i * i; j <= x; j += i) composite[j] = true;
    }
    return primes;
}

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

}  // namespace rderange
