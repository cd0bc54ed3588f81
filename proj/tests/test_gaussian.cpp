#include <cmath>
#include <vector>

#include "doctest.h"

#include "arhyst/errors.hpp"
#include "arhyst/gaussian.hpp"

using namespace arhyst;

// Reference numbers throughout this file are 50-digit evaluations of the
// defining formulas (density, erfc-based CDF, tail-moment integrals),
// truncated to double precision.

TEST_CASE("gauss_pdf matches references") {
    CHECK(std::abs(gauss_pdf(0.0) - 0.39894228040143268) <= 1e-16);
    CHECK(std::abs(gauss_pdf(1.0) - 0.24197072451914335) <= 2e-16);
    CHECK(std::abs(gauss_pdf(0.5) - 0.35206532676429948) <= 2e-16);
    CHECK(gauss_pdf(-1.0) == gauss_pdf(1.0));
    CHECK(gauss_pdf(40.0) == 0.0);
}

TEST_CASE("gauss_cdf matches references") {
    CHECK(gauss_cdf(0.0) == 0.5);
    CHECK(std::abs(gauss_cdf(-1.0) - 0.15865525393145705) <= 1e-15);
    CHECK(std::abs(gauss_cdf(1.96) - 0.97500210485177957) <= 1e-15);
    CHECK(std::abs(gauss_cdf(1.0) + gauss_cdf(-1.0) - 1.0) <= 1e-16);
    CHECK(gauss_cdf(-40.0) == 0.0);
    CHECK(gauss_cdf(40.0) == 1.0);
}

TEST_CASE("gauss_inv_cdf round-trips against the CDF") {
    CHECK(gauss_inv_cdf(0.5) == 0.0);
    for (double x = -5.0; x <= 5.0; x += 0.25) {
        CHECK(std::abs(gauss_inv_cdf(gauss_cdf(x)) - x) <= 1e-10);
    }
    for (double p : {1e-8, 1e-4, 0.02424, 0.02426, 0.3, 0.7, 0.97576, 0.9999, 1.0 - 1e-9}) {
        const double x = gauss_inv_cdf(p);
        CHECK(std::abs(gauss_cdf(x) - p) <= 1e-12 * p + 1e-17);
    }
    // antisymmetry
    CHECK(std::abs(gauss_inv_cdf(0.3) + gauss_inv_cdf(0.7)) <= 1e-13);
}

TEST_CASE("gauss_inv_cdf rejects arguments outside (0,1)") {
    CHECK_THROWS_AS(gauss_inv_cdf(0.0), DomainError);
    CHECK_THROWS_AS(gauss_inv_cdf(1.0), DomainError);
    CHECK_THROWS_AS(gauss_inv_cdf(-0.1), DomainError);
    CHECK_THROWS_AS(gauss_inv_cdf(std::nan("")), DomainError);
}

TEST_CASE("trunc_moments reproduces the tail-moment formulas") {
    const TruncatedMoments m1 = trunc_moments(1.0);
    CHECK(m1.lower_bound == 1.0);
    CHECK(std::abs(m1.mean_part - 0.24197072451914335) <= 2e-16);
    CHECK(std::abs(m1.x2m1_part - 0.24197072451914335) <= 2e-16);  // u f(u) at u = 1
    CHECK(std::abs(m1.x2_part - 0.4006259784506004) <= 5e-16);

    const TruncatedMoments m0 = trunc_moments(0.0);
    CHECK(std::abs(m0.mean_part - 0.39894228040143268) <= 1e-16);
    CHECK(m0.x2m1_part == 0.0);
    CHECK(m0.x2_part == 0.5);

    // internal consistency: x2 = x2m1 + tail mass
    for (double u : {0.0, 0.3, 1.0, 2.5}) {
        const TruncatedMoments m = trunc_moments(u);
        CHECK(std::abs(m.x2_part - (m.x2m1_part + gauss_cdf(-u))) <= 1e-16);
    }
}

TEST_CASE("RngStream is reproducible and streams are distinct") {
    RngStream a(42, 7);
    RngStream b(42, 7);
    for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream c(42, 8);
    RngStream d(43, 7);
    RngStream base(42, 7);
    CHECK(c.next_u64() != base.next_u64());
    RngStream base2(42, 7);
    CHECK(d.next_u64() != base2.next_u64());
}

TEST_CASE("RngStream children are decorrelated from the parent and each other") {
    RngStream parent(123, 5);
    RngStream c0 = parent.child(0);
    RngStream c1 = parent.child(1);
    CHECK(c0.next_u64() != c1.next_u64());

    // same child index from an equal parent gives the same stream
    RngStream parent2(123, 5);
    RngStream c0b = parent2.child(0);
    RngStream c0a = parent.child(0);
    for (int i = 0; i < 5; ++i) CHECK(c0a.next_u64() == c0b.next_u64());
}

TEST_CASE("uniforms lie strictly inside (0,1) with the right moments") {
    RngStream rng(2024, 1);
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    int below_half = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        sum += u;
        sum2 += u * u;
        below_half += u < 0.5;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean - 0.5) <= 0.004);               // ~4.4 sigma
    CHECK(std::abs(var - 1.0 / 12.0) <= 0.003);
    CHECK(std::abs(below_half / double(n) - 0.5) <= 0.007);
}

TEST_CASE("sample_std_normal has standard moments") {
    RngStream rng(9, 0);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_std_normal(rng);
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean) <= 0.01);                       // 4.5 sigma
    CHECK(std::abs(sum2 / n - mean * mean - 1.0) <= 0.014);
}

TEST_CASE("sample_truncated_above matches the conditional tail moments") {
    RngStream rng(31337, 2);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_truncated_above(1.0, rng);
        CHECK(x > 1.0);
        sum += x;
        sum2 += x * x;
    }
    // E[X | X > 1] and E[X^2 | X > 1]
    CHECK(std::abs(sum / n - 1.5251352761609812) <= 0.005);
    CHECK(std::abs(sum2 / n - 2.5251352761609812) <= 0.02);
}

TEST_CASE("sample_truncated_above refuses thresholds past the supported tail") {
    RngStream rng(1, 1);
    CHECK_THROWS_AS(sample_truncated_above(8.5, rng), UnsupportedRegionError);
    CHECK_NOTHROW(sample_truncated_above(7.5, rng));
}
