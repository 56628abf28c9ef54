#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rderange/asymptotics.hpp"
#include "rderange/derangements.hpp"

using namespace rderange;

TEST_CASE("rational enclosures of e") {
    RatInterval e = e_interval(30);
    CHECK(e.lo < e.hi);
    CHECK(e.hi - e.lo < Rat(1, pow_int(10, 30)));
    CHECK(e.lo > Rat(27182, 10000));
    CHECK(e.hi < Rat(27183, 10000));

    RatInterval ie = inv_e_interval(30);
    CHECK(ie.lo < ie.hi);
    CHECK(ie.lo > Rat(36787, 100000));
    CHECK(ie.hi < Rat(36788, 100000));
    // the two enclosures are consistent: 1/e_hi <= inv_e <= 1/e_lo
    CHECK(ie.lo * e.lo < 1);
    CHECK(ie.hi * e.hi > 1);

    Rat s = inv_e_series(10);
    CHECK(abs(Rat(s - ie.lo)) < Rat(1, pow_int(10, 10)));
}

TEST_CASE("decimal formatting") {
    CHECK(to_decimal(Rat(1, 3), 5) == "0.33333");
    CHECK(to_decimal(Rat(2, 3), 3) == "0.667");
    CHECK(to_decimal(Rat(12345, 10), 4) == "1235");
    CHECK(to_decimal(Rat(12345, 10), 6) == "1234.50");
    CHECK(to_decimal(Rat(0), 5) == "0");
    CHECK(to_decimal(Rat(-1, 8), 3) == "-0.125");
    CHECK(to_decimal(Rat(999999, 1000), 3) == "1000");
    CHECK(to_decimal_fixed(Rat(1, 3), 6) == "0.333333");
    CHECK(to_decimal_fixed(Rat(7, 2), 0) == "4");
    CHECK(to_decimal_fixed(Rat(-1, 8), 2) == "-0.13");
}

TEST_CASE("saddle coefficients") {
    SaddleCoefficients a0 = saddle_coeffs(0);
    REQUIRE(a0.coeffs.size() == 1);
    CHECK(a0.coeffs[0] == 1);

    SaddleCoefficients a2 = saddle_coeffs(2);
    CHECK(a2.coeffs[0] == 1);
    CHECK(a2.coeffs[1] == -1);
    CHECK(a2.coeffs[2] == Rat(-1, 2));

    SaddleCoefficients a3 = saddle_coeffs(3);
    CHECK(a3.coeffs[1] == -2);
    CHECK(a3.coeffs[2] == Rat(1, 2));
    CHECK(a3.coeffs[3] == Rat(2, 3));
}

TEST_CASE("weighted coefficient sums match the closed polynomials") {
    for (unsigned n = 0; n <= 50; ++n) {
        Rat s2 = saddle_weighted_sum(2, n);
        Rat expected2(Int(n) * n + n - 1, Int(2));
        expected2.canonicalize();
        CHECK(s2 == expected2);

        Rat s3 = saddle_weighted_sum(3, n);
        Rat expected3(Int(n) * n * n - 4 * Int(n) + 1, Int(6));
        expected3.canonicalize();
        CHECK(s3 == expected3);
    }
}

TEST_CASE("saddle estimate reproduces the nine-digit agreement at (r,n) = (4,8)") {
    DerangementTable t;
    Estimate est = saddle_estimate(t, 4, 8, 12, /*normalized=*/true);
    CHECK(to_decimal_truncated(est.value, 9) == "0.00351080232");
    CHECK(to_decimal_truncated(*est.exact_reference, 9) == "0.00351080246");
    Rat tolerance(2, pow_int(10, 10));
    CHECK(est.abs_error() < tolerance);
}

TEST_CASE("saddle estimate at tiny n has a visible remainder") {
    DerangementTable t;
    Estimate est = saddle_estimate(t, 0, 1, 5);
    CHECK(*est.exact_reference == 0);
    CHECK(est.value > Rat(36787, 100000));
    CHECK(est.value < Rat(36789, 100000));
}

TEST_CASE("saddle error never exceeds the certified deviation bound") {
    // The remainder decays roughly factorially, so at 120 working digits the
    // series truncation never masks it on this range. Occasional parity
    // wiggles in the trend are tolerated; the deviation bound is not.
    DerangementTable t;
    for (unsigned r = 1; r <= 4; ++r) {
        unsigned decreases = 0, increases = 0;
        Rat first, prev = -1;
        for (unsigned n = r + 2; n <= 60; ++n) {
            Estimate est = saddle_estimate(t, r, n, 120);
            Rat err = est.abs_error();
            CHECK(err < 2 * Rat(binomial(static_cast<unsigned long>(n) - 1, r - 1)));
            if (prev >= 0)
                (err <= prev ? decreases : increases) += 1;
            else
                first = err;
            prev = err;
        }
        CHECK(decreases > increases);
        CHECK(prev * pow_int(10, 20) < first);
    }
}

TEST_CASE("explicit deviation bound certified") {
    DerangementTable t;
    CHECK(t2_bound_check(t, 2, 10));
    CHECK(t.r_derangement(2, 10) == 72755370);
    CHECK(t2_bound_check(t, 1, 1));
    CHECK(t2_bound_check(t, 4, 40));
    for (unsigned r = 1; r <= 5; ++r)
        for (unsigned n = r; n <= 60; ++n) CHECK(t2_bound_check(t, r, n));
    CHECK_THROWS_AS(t2_bound_check(t, 0, 5), std::invalid_argument);
    CHECK_THROWS_AS(t2_bound_check(t, 2, 10, /*max_digits=*/1), precision_error);
}

TEST_CASE("limit ratio converges to 1/(r! e)") {
    DerangementTable t;
    Estimate small = limit_ratio(t, 2, 2, 10);
    CHECK(small.value == Rat(1, 12));

    Estimate e1 = limit_ratio(t, 1, 1000, 15);
    RatInterval inv_e = inv_e_interval(30);
    CHECK(abs(Rat(e1.value - inv_e.lo)) < Rat(1, 1000));

    Estimate e3 = limit_ratio(t, 3, 100, 15);
    Rat target3 = inv_e_interval(30).lo / 6;
    CHECK(abs(Rat(e3.value - target3)) < Rat(1, 100));

    SUBCASE("error at n = 500 stays below the scaled deviation bound") {
        for (unsigned r = 1; r <= 3; ++r) {
            Estimate e = limit_ratio(t, r, 500, 15);
            Rat limit = inv_e_interval(40).lo / Rat(factorial(r));
            Rat err = abs(Rat(e.value - limit));
            Rat bound(2 * factorial(500) * binomial(499ul, r - 1), factorial(500 + r));
            bound.canonicalize();
            CHECK(err < bound);
        }
    }
}
