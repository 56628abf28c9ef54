#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rderange/derangements.hpp"
#include "rderange/modular.hpp"

using namespace rderange;

TEST_CASE("prime sieve and primality") {
    CHECK(prime_sieve(1).empty());
    CHECK(prime_sieve(10) == std::vector<unsigned long>{2, 3, 5, 7});
    CHECK(prime_sieve(30) == std::vector<unsigned long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
}

TEST_CASE("residue sequences") {
    DerangementTable t;
    CHECK(residue_sequence(t, SequenceKind::D, 2, 2, 7) ==
          std::vector<unsigned long>{0, 0, 0, 0, 0, 0, 0, 0});
    CHECK(residue_sequence(t, SequenceKind::C, 2, 3, 7) ==
          std::vector<unsigned long>{1, 2, 1, 2, 1, 2});
    CHECK(residue_sequence(t, SequenceKind::D, 1, 1, 5) ==
          std::vector<unsigned long>{0, 0, 0, 0, 0, 0});
    CHECK_THROWS_AS(residue_sequence(t, SequenceKind::C, 3, 5, 2), std::invalid_argument);
}

TEST_CASE("periodicity certificates") {
    DerangementTable t;
    ResidueCertificate even = certify_period(t, SequenceKind::D, 2, 4, 10);
    CHECK(even.claimed_period == 4);
    CHECK(even.residues.size() == 4);
    CHECK(even.verified_up_to == 40);

    ResidueCertificate odd = certify_period(t, SequenceKind::D, 2, 5, 10);
    CHECK(odd.claimed_period == 10);
    CHECK(odd.verified_up_to == 50);

    ResidueCertificate c1 = certify_period(t, SequenceKind::C, 1, 3, 10);
    CHECK(c1.claimed_period == 6);
    // C_1(n) = D(n+1)/n starts 1, 1, 3, 11, 53 from n = 1
    CHECK(t.reduced(1, 1) == 1);
    CHECK(t.reduced(1, 2) == 1);
    CHECK(t.reduced(1, 3) == 3);
    CHECK(t.reduced(1, 4) == 11);
    CHECK(t.reduced(1, 5) == 53);
    CHECK(c1.residues[0] == 1);

    CHECK_THROWS_AS(certify_period(t, SequenceKind::D, 2, 5, 2), std::invalid_argument);

    SUBCASE("signed invariance and both claimed periods across the grid") {
        for (unsigned r = 1; r <= 3; ++r)
            for (unsigned long d = 1; d <= 12; ++d) {
                ResidueCertificate cd = certify_period(t, SequenceKind::D, r, d, 10);
                CHECK(cd.claimed_period == (d % 2 == 0 ? d : 2 * d));
                ResidueCertificate cc = certify_period(t, SequenceKind::C, r, d, 10);
                CHECK(cc.claimed_period == (d % 2 == 0 ? d : 2 * d));
            }
    }
}

TEST_CASE("congruence polynomial f_{r,d}") {
    DerangementTable t;
    IntPolynomial f12 = f_polynomial(1, 2);
    CHECK(f12 == IntPolynomial(std::vector<Int>{Int(0), Int(-1)}));  // -X
    IntPolynomial f23 = f_polynomial(2, 3);
    CHECK(f23 == IntPolynomial(std::vector<Int>{Int(0), Int(-1), Int(1)}));  // X^2 - X
    CHECK(f_polynomial(3, 2).is_zero());

    SUBCASE("D_r(n) = (-1)^n f_{r,d}(n) mod d") {
        for (unsigned r = 1; r <= 3; ++r)
            for (unsigned long d = 1; d <= 8; ++d) {
                IntPolynomial f = f_polynomial(r, d);
                for (unsigned n = 0; n <= 30; ++n) {
                    Int rhs = f.eval(Int(n));
                    if (n % 2 != 0) rhs = -rhs;
                    Int diff = t.r_derangement(r, n) - rhs;
                    CHECK(diff % static_cast<long>(d) == 0);
                }
            }
    }
}

TEST_CASE("congruence polynomial fhat_{r,d}") {
    DerangementTable t;
    CHECK(fhat_polynomial(2, 1) == IntPolynomial(Int(1)));
    CHECK(fhat_polynomial(1, 2) == IntPolynomial(std::vector<Int>{Int(-3), Int(2)}));  // 2X - 3
    CHECK_THROWS_AS(fhat_polynomial(0, 3), std::invalid_argument);

    SUBCASE("C_r(n) = (-1)^n fhat_{r,d}(n) mod d") {
        for (unsigned r = 1; r <= 3; ++r)
            for (unsigned long d = 1; d <= 8; ++d) {
                IntPolynomial f = fhat_polynomial(r, d);
                for (unsigned n = r; n <= r + 30; ++n) {
                    Int rhs = f.eval(Int(n));
                    if (n % 2 != 0) rhs = -rhs;
                    Int diff = t.reduced(r, n) - rhs;
                    CHECK(diff % static_cast<long>(d) == 0);
                }
            }
    }

    SUBCASE("f_{r,r+d} = X(X-1)...(X-r+1) fhat_{r,d}") {
        for (unsigned r = 1; r <= 4; ++r)
            for (unsigned long d = 1; d <= 8; ++d) {
                IntPolynomial fall(Int(1));
                for (unsigned i = 0; i < r; ++i)
                    fall = fall * IntPolynomial(std::vector<Int>{Int(-static_cast<long>(i)), Int(1)});
                CHECK(f_polynomial(r, r + d) == fall * fhat_polynomial(r, d));
            }
    }
}

TEST_CASE("prime classification") {
    DerangementTable t;
    PrimeClassification p32 = classify_prime(t, 3, 2);
    CHECK(p32.in_a);
    CHECK_FALSE(p32.witness.has_value());

    PrimeClassification p23 = classify_prime(t, 2, 3);
    CHECK(p23.in_a);

    PrimeClassification p22 = classify_prime(t, 2, 2);
    CHECK_FALSE(p22.in_a);
    REQUIRE(p22.witness.has_value());
    CHECK(*p22.witness == 3);

    CHECK_THROWS_AS(classify_prime(t, 9, 2), std::invalid_argument);

    SUBCASE("membership window extends by periodicity") {
        for (unsigned long p : {3ul, 5ul, 7ul, 11ul}) {
            PrimeClassification pc = classify_prime(t, p, 2);
            if (!pc.in_a) continue;
            for (unsigned n = 2; n <= 10 * (static_cast<unsigned>(p) + 2); ++n)
                CHECK(t.reduced(2, n) % static_cast<long>(p) != 0);
        }
    }
}

TEST_CASE("density of certifying primes") {
    DerangementTable t;
    Rat d22 = a_r_density(t, 2, 2);
    CHECK(d22 == 0);
    Rat d23 = a_r_density(t, 2, 3);
    CHECK(d23 == Rat(1, 2));
    Rat d1 = a_r_density(t, 1, 100);
    CHECK(d1 > 0);
    CHECK(d1 < 1);
    CHECK_THROWS_AS(a_r_density(t, 2, 1), std::invalid_argument);
}
