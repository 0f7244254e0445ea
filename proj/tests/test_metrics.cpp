// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "pcmp/metrics.hpp"
#include "pcmp/rng.hpp"

using namespace pcmp;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

CVec random_cvec(Rng& rng, Index n) {
    CVec v(n);
    for (Index i = 0; i < n; ++i) v(i) = rng.cnormal();
    return v;
}
} // namespace

TEST_CASE("aligned_nmse: a pure global phase scores zero") {
    Rng rng(1);
    const CVec h = random_cvec(rng, 8);
    CHECK(aligned_nmse(std::polar(1.0, 1.3) * h, h) < 1e-12);
    for (int i = 0; i < 10; ++i) {
        const double gamma = rng.uniform(0.0, 2.0 * kPi);
        CHECK(aligned_nmse(std::polar(1.0, gamma) * h, h) < 1e-12);
        CHECK(aligned_nmse(h, std::polar(1.0, gamma) * h) < 1e-12);
    }
}

TEST_CASE("aligned_nmse: doubling the channel gives exactly one") {
    Rng rng(2);
    const CVec h = random_cvec(rng, 6);
    CHECK(aligned_nmse(2.0 * h, h) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("aligned_nmse: closed form beats a 10^4-point grid") {
    Rng rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        const CVec h = random_cvec(rng, 5);
        const CVec g = random_cvec(rng, 5);
        const double closed = aligned_nmse(g, h);
        const double ref = h.squaredNorm();
        for (int i = 0; i < 10000; ++i) {
            const double delta = -kPi + 2.0 * kPi * i / 10000.0;
            const double obj = (std::polar(1.0, delta) * g - h).squaredNorm() / ref;
            CHECK(closed <= obj + 1e-12 * (1.0 + obj));
        }
    }
}

TEST_CASE("aligned_nmse: zero reference throws") {
    Rng rng(4);
    CHECK_THROWS_AS(aligned_nmse(random_cvec(rng, 4), CVec::Zero(4)), std::invalid_argument);
}

TEST_CASE("achievable_rate: perfect estimate gives the perfect-CSI rate") {
    Rng rng(5);
    const CVec h = random_cvec(rng, 8);
    const double sigma2 = 0.04;
    const double expected = std::log2(1.0 + h.squaredNorm() / sigma2);
    CHECK(achievable_rate(h, h, sigma2) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("achievable_rate: orthogonal estimate gives zero") {
    CVec h = CVec::Zero(4), g = CVec::Zero(4);
    h(0) = Complex{1.0, 0.5};
    g(1) = Complex{-0.3, 2.0};
    CHECK(achievable_rate(g, h, 0.1) == 0.0);
}

TEST_CASE("achievable_rate: matched filter is optimal, scale and phase invariant") {
    Rng rng(6);
    const CVec h = random_cvec(rng, 8);
    const double sigma2 = 0.1;
    const double best = achievable_rate(h, h, sigma2);
    for (int i = 0; i < 25; ++i) {
        const CVec g = random_cvec(rng, 8);
        const double rate = achievable_rate(g, h, sigma2);
        CHECK(rate <= best + 1e-12);
        const Complex scale = (2.0 + rng.uniform()) * std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
        CHECK(achievable_rate(scale * g, h, sigma2) == doctest::Approx(rate).epsilon(1e-12));
    }
    CHECK_THROWS_AS(achievable_rate(CVec::Zero(8), h, sigma2), std::invalid_argument);
}

TEST_CASE("snr_to_noise_std: reference points") {
    CHECK(snr_to_noise_std(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(snr_to_noise_std(20.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(snr_to_noise_std(15.0) == doctest::Approx(0.1778279410038923).epsilon(1e-12));
}

TEST_CASE("support_recall: counts intersections over K") {
    CHECK(support_recall({1, 2, 3}, {1, 2, 3}) == 1.0);
    CHECK(support_recall({1, 5, 6}, {1, 2, 3}) == doctest::Approx(1.0 / 3.0));
    CHECK(support_recall({}, {1, 2}) == 0.0);
}

TEST_CASE("evaluate_estimate: zero estimate gets the sentinel") {
    Rng rng(7);
    const CVec h = random_cvec(rng, 4);
    const TrialMetrics m = evaluate_estimate(CVec::Zero(4), h, {}, {0, 1}, 0.1);
    CHECK(std::isinf(m.nmse_db));
    CHECK(m.nmse_db > 0);
    CHECK(m.rate_bps_hz == 0.0);
}
