#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperflow/errors.hpp"
#include "hyperflow/rng.hpp"
#include "hyperflow/symfunc.hpp"

#include "oracle_constants.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace hyperflow;

namespace {

// independent oracle: sigma_k by explicit subset enumeration
double sigma_brute(const std::vector<double>& lam, int k) {
    const int m = static_cast<int>(lam.size());
    if (k == 0) return 1.0;
    double total = 0.0;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        double prod = 1.0;
        for (int i : idx) prod *= lam[i];
        total += prod;
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == m - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return total;
}

std::vector<double> random_tuple(std::mt19937_64& gen, int m, double lo,
                                 double hi) {
    std::vector<double> lam(m);
    for (double& v : lam) v = rand_uniform(gen, lo, hi);
    return lam;
}

} // namespace

TEST_CASE("sigma_k matches direct values") {
    CHECK(sigma_k(CurvatureVector{1, 2, 3}, 2) == doctest::Approx(11.0).epsilon(1e-14));
    CHECK(sigma_k(CurvatureVector{-5, 17, 0.3}, 0) == 1.0);
    const double c = 1.5;
    CHECK(sigma_k(CurvatureVector{c, c, c, c}, 3) ==
          doctest::Approx(4 * c * c * c).epsilon(1e-14));
}

TEST_CASE("sigma_k recurrence equals brute-force enumeration") {
    std::mt19937_64 gen(42);
    for (int m = 2; m <= 6; ++m) {
        for (int rep = 0; rep < 200; ++rep) {
            const auto lam = random_tuple(gen, m, -2.0, 3.0);
            for (int k = 0; k <= m; ++k) {
                const double fast = sigma_k(std::span<const double>(lam), k);
                const double slow = sigma_brute(lam, k);
                CHECK(std::abs(fast - slow) <=
                      1e-13 * std::max(1.0, std::abs(slow)));
            }
        }
    }
}

TEST_CASE("sigma_k rejects out-of-range index") {
    CHECK_THROWS_AS(sigma_k(CurvatureVector{1, 2}, 3), ArgumentError);
    CHECK_THROWS_AS(sigma_k(CurvatureVector{1, 2}, -1), ArgumentError);
}

TEST_CASE("normalized_H reference values") {
    const double c = oracle::kCoth1;
    CHECK(normalized_H(CurvatureVector{c, c, c}, 2) ==
          doctest::Approx(oracle::kCoth1Sq).epsilon(1e-14));
    CHECK(normalized_H(CurvatureVector{1, 2, 3}, 1) == doctest::Approx(2.0));
    // top index is the Gauss curvature
    CHECK(normalized_H(CurvatureVector{1, 2, 3}, 3) == doctest::Approx(6.0));
}

TEST_CASE("normalized_H is symmetric under permutation") {
    std::mt19937_64 gen(7);
    for (int rep = 0; rep < 100; ++rep) {
        auto lam = random_tuple(gen, 5, -1.0, 2.0);
        auto shuffled = lam;
        for (int i = 4; i > 0; --i)
            std::swap(shuffled[i], shuffled[static_cast<int>(gen() % (i + 1))]);
        for (int k = 0; k <= 5; ++k)
            CHECK(normalized_H(std::span<const double>(lam), k) ==
                  doctest::Approx(
                      normalized_H(std::span<const double>(shuffled), k))
                      .epsilon(1e-13));
    }
}

TEST_CASE("garding cone membership") {
    auto t1 = in_garding_cone(CurvatureVector{1, 1, 1}, 3);
    CHECK(t1.inside);
    CHECK(t1.margin == doctest::Approx(1.0)); // smallest of sigma = 3, 3, 1
    auto t2 = in_garding_cone(CurvatureVector{-1, -1, -1}, 1);
    CHECK_FALSE(t2.inside);
    auto t3 = in_garding_cone(CurvatureVector{3, 3, -0.1}, 2);
    CHECK(t3.inside); // sigma_1 = 5.9, sigma_2 = 8.4
}

TEST_CASE("newton-maclaurin residuals: frozen examples") {
    auto iso = newton_maclaurin_residuals(CurvatureVector{1.3, 1.3, 1.3}, 2, 1);
    CHECK(std::abs(iso.quotient_residual) < 1e-14);
    CHECK(std::abs(iso.power_residual) < 1e-14);

    auto r = newton_maclaurin_residuals(CurvatureVector{1, 2, 3}, 2, 1);
    CHECK(r.quotient_residual == doctest::Approx(1.0 / 3).epsilon(1e-13));

    auto r2 = newton_maclaurin_residuals(CurvatureVector{1, 4}, 2, 1);
    CHECK(r2.power_residual == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("newton-maclaurin residuals nonnegative over random cone samples") {
    std::mt19937_64 gen(2024);
    for (int m = 2; m <= 7; ++m) {
        for (int k = 2; k <= m; ++k) {
            int accepted = 0;
            int tries = 0;
            while (accepted < 1000 && ++tries < 200000) {
                auto lam = random_tuple(gen, m, -0.5, 3.0);
                CurvatureVector cv(lam);
                if (!in_garding_cone(cv, k).inside) continue;
                ++accepted;
                for (int l = 1; l < k; ++l) {
                    auto res = newton_maclaurin_residuals(cv, k, l);
                    const double scale = std::max(
                        1.0,
                        std::abs(normalized_H(cv, k) * normalized_H(cv, l - 1)));
                    CHECK(res.quotient_residual >= -1e-12 * scale);
                    CHECK(res.power_residual >= -1e-12);
                }
            }
            CHECK(accepted == 1000);
        }
    }
}

TEST_CASE("newton-maclaurin rejects tuples outside the cone closure") {
    CHECK_THROWS_AS(
        newton_maclaurin_residuals(CurvatureVector{-1, -2, -3}, 2, 1),
        DomainError);
}

TEST_CASE("flow speed: normalization, homogeneity, frozen value") {
    const double c = 0.37;
    CHECK(flow_speed(CurvatureVector{c, c, c, c}, 3, 1) ==
          doctest::Approx(c).epsilon(1e-14));
    CHECK(flow_speed(CurvatureVector{1, 2, 3}, 2, 0) ==
          doctest::Approx(oracle::kSqrt11Over3).epsilon(1e-14));

    std::mt19937_64 gen(5);
    for (int rep = 0; rep < 200; ++rep) {
        auto lam = random_tuple(gen, 4, 0.1, 3.0);
        CurvatureVector cv(lam);
        auto scaled = lam;
        for (double& v : scaled) v *= 2.0;
        CHECK(flow_speed(CurvatureVector(scaled), 3, 1) ==
              doctest::Approx(2.0 * flow_speed(cv, 3, 1)).epsilon(1e-13));
    }
}

TEST_CASE("flow speed rejects nonpositive tuples instead of clamping") {
    CHECK_THROWS_AS(flow_speed(CurvatureVector{1.0, -0.1, 2.0}, 2, 0),
                    DomainError);
    CHECK_THROWS_AS(flow_speed(CurvatureVector{0.0, 1.0}, 1, 0), DomainError);
    CHECK_THROWS_AS(flow_speed(CurvatureVector{1.0, 1.0}, 2, 2), ArgumentError);
}

TEST_CASE("flow speed strictly increasing in each argument") {
    std::mt19937_64 gen(11);
    for (int rep = 0; rep < 100; ++rep) {
        auto lam = random_tuple(gen, 4, 0.2, 2.5);
        for (int k = 1; k <= 4; ++k) {
            for (int l = 0; l < k; ++l) {
                const double base = flow_speed(std::span<const double>(lam), k, l);
                for (int i = 0; i < 4; ++i) {
                    auto bumped = lam;
                    bumped[i] += 1e-6;
                    CHECK(flow_speed(std::span<const double>(bumped), k, l) > base);
                }
            }
        }
    }
}

TEST_CASE("flow speed gradient matches finite differences") {
    std::mt19937_64 gen(13);
    for (int rep = 0; rep < 50; ++rep) {
        auto lam = random_tuple(gen, 4, 0.3, 2.0);
        CurvatureVector cv(lam);
        for (int k = 1; k <= 4; ++k) {
            for (int l = 0; l < k; ++l) {
                const auto grad = flow_speed_gradient(cv, k, l);
                for (int i = 0; i < 4; ++i) {
                    auto hi = lam, lo = lam;
                    const double h = 1e-6;
                    hi[i] += h;
                    lo[i] -= h;
                    const double fd =
                        (flow_speed(std::span<const double>(hi), k, l) -
                         flow_speed(std::span<const double>(lo), k, l)) /
                        (2 * h);
                    CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-6));
                }
            }
        }
    }
}

TEST_CASE("flow speed concave along random segments (sanity property)") {
    std::mt19937_64 gen(17);
    for (int rep = 0; rep < 500; ++rep) {
        auto a = random_tuple(gen, 4, 0.2, 3.0);
        auto b = random_tuple(gen, 4, 0.2, 3.0);
        std::vector<double> mid(4);
        for (int i = 0; i < 4; ++i) mid[i] = 0.5 * (a[i] + b[i]);
        for (int k = 2; k <= 4; ++k) {
            const double fm = flow_speed(std::span<const double>(mid), k, 1);
            const double avg =
                0.5 * (flow_speed(std::span<const double>(a), k, 1) +
                       flow_speed(std::span<const double>(b), k, 1));
            CHECK(fm >= avg - 1e-12);
        }
    }
}

TEST_CASE("curvature vector validates entries") {
    CHECK_THROWS_AS(CurvatureVector(std::vector<double>{}), ArgumentError);
    CHECK_THROWS_AS(CurvatureVector{1.0, std::nan("")}, ArgumentError);
}
