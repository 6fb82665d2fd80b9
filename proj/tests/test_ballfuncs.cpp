#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperflow/ballfuncs.hpp"
#include "hyperflow/errors.hpp"
#include "hyperflow/integrals.hpp"
#include "hyperflow/starbody.hpp"

#include "oracle_constants.hpp"

#include <cmath>
#include <vector>

using namespace hyperflow;

namespace {

std::vector<double> log_grid(double lo, double hi, int count) {
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    return g;
}

} // namespace

TEST_CASE("f closed forms: frozen values and limits") {
    auto bf = ball_functions(3);
    CHECK(bf->f(1, 1.0) == doctest::Approx(oracle::kW1BallN3R1).epsilon(1e-13));
    CHECK(bf->f(0, 1.0) == doctest::Approx(oracle::kVolBallN3R1).epsilon(1e-13));
    CHECK(bf->f(2, 1.0) == doctest::Approx(oracle::kW2BallN3R1).epsilon(1e-13));
    CHECK(bf->f(3, 5.0) == doctest::Approx(oracle::kOmega2 / 3).epsilon(1e-15));
    for (int k = 0; k <= 2; ++k) CHECK(bf->f(k, 0.0) == 0.0);
    CHECK(bf->f(1, 1e-6) > 0.0);
}

TEST_CASE("f agrees with discrete quermassintegrals on balls") {
    for (int n : {2, 3, 4, 5, 6}) {
        auto bf = ball_functions(n);
        for (double r : {0.6, 1.0, 1.7}) {
            const QuermassVector qv = quermassintegrals(make_ball(n, r, 64));
            for (int k = 0; k <= n - 1; ++k)
                CHECK(std::abs(bf->f(k, r) - qv.W[k]) <=
                      1e-10 * std::max(1.0, std::abs(qv.W[k])));
        }
    }
}

TEST_CASE("f strictly increasing on a broad grid") {
    for (int n : {3, 5, 8}) {
        auto bf = ball_functions(n);
        for (int k = 0; k <= n - 1; ++k) {
            double prev = 0.0;
            for (double r : log_grid(1e-3, 9.5, 200)) {
                const double v = bf->f(k, r);
                CHECK(v > prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("f_inverse round trips and closed form for k=1") {
    for (int n : {3, 4, 6}) {
        auto bf = ball_functions(n);
        const double omega = sphere_measure(n - 1);
        // round trip through the area functional at r = 2
        const double s = omega * std::pow(std::sinh(2.0), n - 1) / n;
        CHECK(bf->f_inverse(1, s) == doctest::Approx(2.0).epsilon(1e-11));
        CHECK(bf->f_inverse(1, 0.0) == 0.0);
        for (int k = 0; k <= n - 1; ++k) {
            for (double r : {0.3, 1.0, 2.5, 6.0}) {
                const double v = bf->f(k, r);
                CHECK(bf->f(k, bf->f_inverse(k, v)) ==
                      doctest::Approx(v).epsilon(1e-11));
            }
        }
        // closed form f_1^{-1}(s) = asinh((n s / omega)^{1/(n-1)})
        for (double s2 : log_grid(1e-3, 1e3, 40)) {
            const double closed =
                std::asinh(std::pow(n * s2 / omega, 1.0 / (n - 1)));
            if (closed > 10.0) continue;
            CHECK(bf->f_inverse(1, s2) ==
                  doctest::Approx(closed).epsilon(1e-11));
        }
    }
}

TEST_CASE("f_inverse range error carries advisory") {
    auto bf = ball_functions(3);
    CHECK_THROWS_AS(bf->f_inverse(1, 1e30), RangeError);
    CHECK_THROWS_AS(bf->f_inverse(3, 1.0), ArgumentError); // constant f_n
}

TEST_CASE("g: monotone, round trip, positivity") {
    for (int n : {4, 5, 6}) {
        auto bf = ball_functions(n);
        for (int k = 2; k <= n - 1; ++k) {
            CHECK(bf->g(k, 0.0) == 0.0);
            double prev = -1.0;
            for (double s : log_grid(1e-3, 100.0, 60)) {
                const double v = bf->g(k, s);
                CHECK(v > prev);
                prev = v;
                CHECK(bf->g_inverse(k, v) == doctest::Approx(s).epsilon(1e-10));
            }
            // positivity (pos): s/n - (k-1)/(n-k+2) g^{-1}(s) >= 0
            for (double s : log_grid(1e-2, 500.0, 40))
                CHECK(bf->positivity_residual(k, s) >= -1e-12 * std::max(1.0, s));
        }
        // extended top index: g_n is affine with slope n(n-1)/2 ... + const
        const double w = sphere_measure(n - 1);
        CHECK(bf->g(n, 0.0) == doctest::Approx(w).epsilon(1e-14));
        const double slope = static_cast<double>(n) * (n - 1) / 2.0;
        CHECK(bf->g(n, 2.0) - bf->g(n, 1.0) ==
              doctest::Approx(slope).epsilon(1e-12));
    }
}

TEST_CASE("h: ball consistency, monotonicity, chain") {
    for (int n : {5, 6, 7}) {
        auto bf = ball_functions(n);
        // equality case: h_k(int H_{k-2} over a ball) = int H_k over the ball
        for (int k = 2; k <= n - 2; ++k) {
            for (double r : {0.5, 1.0, 2.0}) {
                const double lhs = bf->h(k, bf->ball_curvature_integral(k - 2, r));
                const double rhs = bf->ball_curvature_integral(k, r);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
            }
        }
        // top index via the constant extension g_n
        for (double r : {0.5, 1.5}) {
            const double lhs =
                bf->h(n - 1, bf->ball_curvature_integral(n - 3, r));
            CHECK(lhs == doctest::Approx(bf->ball_curvature_integral(n - 1, r))
                             .epsilon(1e-9));
        }
        // monotone increasing in s
        for (int k = 2; k <= n - 1; ++k) {
            double prev = -1.0;
            for (double s : log_grid(0.5, 200.0, 50)) {
                const double v = bf->h(k, s);
                CHECK(v > prev);
                prev = v;
            }
        }
        // chain reproduces int H_k from int H_l on ball data
        for (double r : {0.8, 1.6}) {
            for (int k = 2; k <= n - 1; ++k) {
                for (int l = k % 2; l < k; l += 2) {
                    const double got =
                        bf->h_chain(k, l, bf->ball_curvature_integral(l, r));
                    CHECK(got ==
                          doctest::Approx(bf->ball_curvature_integral(k, r))
                              .epsilon(1e-8));
                }
            }
        }
    }
}

TEST_CASE("h rejects the undefined index") {
    auto bf = ball_functions(5);
    CHECK_THROWS_AS(bf->h(1, 1.0), ArgumentError);
    CHECK_THROWS_AS(bf->h(5, 1.0), ArgumentError); // k = n needs g_{n+1}
}

TEST_CASE("thm13 rhs: ball equality and frozen value") {
    CHECK(thm13_rhs(oracle::kAreaBallN3R1, 2, 3) ==
          doctest::Approx(oracle::kThm13N3K2BallR1).epsilon(1e-13));
    // equality case: rhs(area of ball) = int H_k over the ball
    for (int n : {3, 4, 5, 6}) {
        auto bf = ball_functions(n);
        for (int k = 1; k <= n - 1; ++k) {
            for (double r : {0.5, 1.0, 2.0, 3.5}) {
                const double area = bf->ball_curvature_integral(0, r);
                CHECK(thm13_rhs(area, k, n) ==
                      doctest::Approx(bf->ball_curvature_integral(k, r))
                          .epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("cancellation identity: explicit rhs equals the f-composition") {
    // 50-point log grid of s, all n <= 8, 1 <= k <= n-1
    for (int n = 3; n <= 8; ++n) {
        const double omega = sphere_measure(n - 1);
        const double s_hi = omega * std::pow(std::sinh(8.0), n - 1) / n;
        for (int k = 1; k <= n - 1; ++k) {
            for (double s : log_grid(1e-2, s_hi, 50)) {
                const double area = n * s;
                const double a = thm13_rhs(area, k, n);
                const double b = thm13_rhs_composition(area, k, n);
                CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
            }
        }
    }
}

TEST_CASE("thm12(i) right side on ball data reproduces the curvature integral") {
    for (int n : {4, 5}) {
        auto bf = ball_functions(n);
        for (int k = 1; k <= n - 1; ++k) {
            for (int l = 0; l < k; ++l) {
                const double r = 1.3;
                const double Wl = bf->f(l, r);
                const double rr = bf->f_inverse(l, Wl);
                const double rhs =
                    n * bf->f(k + 1, rr) +
                    static_cast<double>(n) * k / (n - k + 1) * bf->f(k - 1, rr);
                CHECK(rhs == doctest::Approx(bf->ball_curvature_integral(k, r))
                                 .epsilon(1e-9));
            }
        }
    }
}
