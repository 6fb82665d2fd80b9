#include "hyperflow/starbody.hpp"

#include "hyperflow/errors.hpp"
#include "hyperflow/integrals.hpp"
#include "hyperflow/quadrature.hpp"
#include "hyperflow/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace hyperflow {

namespace {

std::shared_ptr<const SpectralBasis> basis_for(int dim, BodyMode mode, int N) {
    if (mode == BodyMode::PeriodicCurve) return periodic_basis(N);
    return profile_basis(dim, N);
}

} // namespace

std::string to_string(BodyMode mode) {
    return mode == BodyMode::PeriodicCurve ? "periodic-curve"
                                           : "axisymmetric-profile";
}

BodyMode body_mode_from_string(const std::string& s) {
    if (s == "periodic-curve") return BodyMode::PeriodicCurve;
    if (s == "axisymmetric-profile") return BodyMode::AxisymmetricProfile;
    throw ArgumentError("unknown body mode: " + s);
}

StarBody::StarBody(int dimension, BodyMode mode, Eigen::VectorXd nodes)
    : dim_(dimension), mode_(mode), nodes_(std::move(nodes)) {
    if (dim_ < 2) throw ArgumentError("StarBody: dimension must be >= 2");
    if (mode_ == BodyMode::PeriodicCurve && dim_ != 2)
        throw ArgumentError("StarBody: periodic-curve mode requires n = 2");
    if (mode_ == BodyMode::AxisymmetricProfile && dim_ < 3)
        throw ArgumentError("StarBody: axisymmetric-profile mode requires n >= 3");
    if (nodes_.size() < 8) throw ArgumentError("StarBody: resolution must be >= 8");
    for (int i = 0; i < nodes_.size(); ++i) {
        if (!std::isfinite(nodes_(i)))
            throw ArgumentError("StarBody: radial samples must be finite");
        if (!(nodes_(i) > 0.0))
            throw ArgumentError("StarBody: radial samples must be positive");
    }
    basis_ = basis_for(dim_, mode_, static_cast<int>(nodes_.size()));
    coeffs_ = basis_->analyze(nodes_);
}

double StarBody::radius_at(double angle) const {
    return basis_->evaluate(coeffs_, angle);
}

CurvatureVector GeometryFrame::lambda_at(int i) const {
    std::vector<double> lam;
    lam.reserve(dimension - 1);
    lam.push_back(kappa_mer(i));
    for (int j = 0; j < dimension - 2; ++j) lam.push_back(kappa_rot(i));
    return CurvatureVector(std::move(lam));
}

double GeometryFrame::mean_curvature(int i, int k) const {
    if (dimension == 2) {
        if (k == 0) return 1.0;
        return kappa_mer(i);
    }
    // sigma_k of (kappa_mer, kappa_rot * (n-2)) split by whether the
    // meridian entry participates:
    //   sigma_k = C(n-2,k) krot^k + kmer C(n-2,k-1) krot^{k-1}
    const int m = dimension - 2;
    const double km = kappa_mer(i), kr = kappa_rot(i);
    double s = binomial(m, k) * std::pow(kr, k);
    if (k >= 1) s += km * binomial(m, k - 1) * std::pow(kr, k - 1);
    return s / binomial(dimension - 1, k);
}

double GeometryFrame::pinching_ratio() const {
    double lo = kappa_mer.minCoeff(), hi = kappa_mer.maxCoeff();
    if (dimension >= 3) {
        lo = std::min(lo, kappa_rot.minCoeff());
        hi = std::max(hi, kappa_rot.maxCoeff());
    }
    return hi / lo;
}

double GeometryFrame::min_principal_curvature() const {
    double lo = kappa_mer.minCoeff();
    if (dimension >= 3) lo = std::min(lo, kappa_rot.minCoeff());
    return lo;
}

GeometryFrame geometry(const StarBody& body) {
    const SpectralBasis& B = body.basis();
    const int N = B.node_count();
    const int n = body.dimension();

    GeometryFrame fr;
    fr.dimension = n;
    fr.angle = B.angles();
    fr.r = B.synth(body.coefficients());
    fr.dr = B.synth_d1(body.coefficients());
    fr.ddr = B.synth_d2(body.coefficients());

    fr.kappa_mer.resize(N);
    fr.kappa_rot.resize(n >= 3 ? N : 0);
    fr.dmu.resize(N);
    fr.ang_w = B.quad_weights();
    fr.nu_r.resize(N);
    fr.u.resize(N);
    fr.rho.resize(N);

    const double ang_factor = (n == 2) ? 1.0 : sphere_measure(n - 2);

    for (int j = 0; j < N; ++j) {
        const double r = fr.r(j), rp = fr.dr(j), rpp = fr.ddr(j);
        const double w = std::sinh(r), wp = std::cosh(r);
        const double g = w * w + rp * rp;
        const double sg = std::sqrt(g);

        fr.kappa_mer(j) =
            (w * w * wp + 2.0 * wp * rp * rp - w * rpp) / (g * sg);
        if (n >= 3) {
            // (w w' sin - r' cos)/(w sin sqrt(g)); r' cot(phi) stays smooth
            // at the poles because the cosine series forces r'(0)=r'(pi)=0.
            const double p = fr.angle(j);
            fr.kappa_rot(j) =
                (w * wp - rp * std::cos(p) / std::sin(p)) / (w * sg);
        }
        fr.nu_r(j) = w / sg;
        fr.u(j) = w * w / sg;
        fr.rho(j) = std::cosh(r);
        const double area_density = (n == 2) ? sg : sg * std::pow(w, n - 2);
        fr.dmu(j) = ang_factor * B.quad_weights()(j) * area_density;

        if (!std::isfinite(fr.kappa_mer(j)) || !std::isfinite(fr.dmu(j)) ||
            (n >= 3 && !std::isfinite(fr.kappa_rot(j))))
            throw NumericError("geometry: non-finite derived values");
    }
    return fr;
}

StarBody make_ball(int dimension, double r0, int resolution) {
    if (!(r0 > 0)) throw ArgumentError("make_ball: radius must be positive");
    const BodyMode mode = dimension == 2 ? BodyMode::PeriodicCurve
                                         : BodyMode::AxisymmetricProfile;
    return StarBody(dimension, mode,
                    Eigen::VectorXd::Constant(resolution, r0));
}

StarBody make_offcenter_ball(int dimension, double R, double a, int resolution) {
    if (!(R > 0)) throw ArgumentError("make_offcenter_ball: R must be positive");
    if (a < 0 || a >= R)
        throw ArgumentError("make_offcenter_ball: need 0 <= a < R");
    const BodyMode mode = dimension == 2 ? BodyMode::PeriodicCurve
                                         : BodyMode::AxisymmetricProfile;
    auto basis = basis_for(dimension, mode, resolution);

    const double cR = std::cosh(R), ca = std::cosh(a), sa = std::sinh(a);
    Eigen::VectorXd nodes(resolution);
    for (int j = 0; j < resolution; ++j) {
        const double cphi = std::cos(basis->angles()(j));
        const auto residual = [&](double rho) {
            return ca * std::cosh(rho) - sa * std::sinh(rho) * cphi - cR;
        };
        double lo = R - a, hi = R + a;
        double rho = 0.5 * (lo + hi);
        bool done = false;
        for (int it = 0; it < 50; ++it) {
            const double f = residual(rho);
            if (std::abs(f) < 1e-14 * cR) {
                done = true;
                break;
            }
            (f > 0 ? hi : lo) = rho;
            const double df = ca * std::sinh(rho) - sa * std::cosh(rho) * cphi;
            double next = rho - f / df;
            if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
            rho = next;
        }
        if (!done && !(std::abs(residual(rho)) < 1e-12 * cR))
            throw NumericError("make_offcenter_ball: Newton failed to converge");
        nodes(j) = rho;
    }
    return StarBody(dimension, mode, std::move(nodes));
}

StarBody make_perturbed_ball(int dimension, double r0,
                             const std::map<int, double>& amplitudes,
                             int resolution, const PerturbationOptions& opts) {
    if (!(r0 > 0))
        throw ArgumentError("make_perturbed_ball: radius must be positive");
    const BodyMode mode = dimension == 2 ? BodyMode::PeriodicCurve
                                         : BodyMode::AxisymmetricProfile;
    auto basis = basis_for(dimension, mode, resolution);

    const int mode_limit = (mode == BodyMode::PeriodicCurve)
                               ? (basis->mode_count() - 1) / 2
                               : basis->mode_count() - 1;
    for (const auto& [m, amp] : amplitudes) {
        (void)amp;
        if (m < 1 || m > mode_limit)
            throw ArgumentError(
                "make_perturbed_ball: mode index outside resolvable range");
    }

    std::mt19937_64 gen(opts.seed);
    std::map<int, double> coeff = amplitudes;
    std::map<int, double> phase;
    if (opts.seed != 0) {
        for (auto& [m, amp] : coeff) {
            amp *= rand_uniform(gen, -1.0, 1.0);
            phase[m] = (mode == BodyMode::PeriodicCurve)
                           ? rand_uniform(gen, 0.0, 2.0 * std::numbers::pi)
                           : 0.0;
        }
    }

    for (int halving = 0; halving <= opts.max_halvings; ++halving) {
        Eigen::VectorXd nodes(resolution);
        for (int j = 0; j < resolution; ++j) {
            const double t = basis->angles()(j);
            double v = r0;
            for (const auto& [m, amp] : coeff) {
                const double ph = phase.count(m) ? phase.at(m) : 0.0;
                v += amp * std::cos(m * t + ph);
            }
            nodes(j) = v;
        }
        if (nodes.minCoeff() > 0.0) {
            StarBody body(dimension, mode, nodes);
            if (h_convexity_margin(body) >= opts.margin_min) return body;
        }
        for (auto& [m, amp] : coeff) amp *= 0.5;
    }
    throw GenerationError(
        "make_perturbed_ball: could not reach the h-convexity floor");
}

double h_convexity_margin(const GeometryFrame& frame) {
    return frame.min_principal_curvature() - 1.0;
}

double h_convexity_margin(const StarBody& body) {
    return h_convexity_margin(geometry(body));
}

double support_lower_bound_check(const GeometryFrame& frame) {
    double worst = std::numeric_limits<double>::infinity();
    for (int j = 0; j < frame.node_count(); ++j)
        worst = std::min(worst, frame.nu_r(j) - std::tanh(frame.r(j)));
    return worst;
}

double support_lower_bound_check(const StarBody& body) {
    return support_lower_bound_check(geometry(body));
}

RadiusRange radius_oscillation(const StarBody& body) {
    return {body.nodes().minCoeff(), body.nodes().maxCoeff()};
}

namespace {

// geodesic distance from the point at signed offset a along direction psi
// to the surface point (r, angle)
double center_distance(double a, double psi, double r, double angle) {
    const double c = std::cosh(a) * std::cosh(r) -
                     std::sinh(a) * std::sinh(r) * std::cos(angle - psi);
    return std::acosh(std::max(1.0, c));
}

struct Spread {
    double inr, outr;
};

Spread enclosure_at(const StarBody& body, double a, double psi) {
    Spread s{std::numeric_limits<double>::infinity(), 0.0};
    const auto& angles = body.basis().angles();
    for (int j = 0; j < body.resolution(); ++j) {
        const double d = center_distance(a, psi, body.nodes()(j), angles(j));
        s.inr = std::min(s.inr, d);
        s.outr = std::max(s.outr, d);
    }
    return s;
}

double golden_min(double lo, double hi, const std::function<double(double)>& f,
                  int iters = 60) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < iters; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(x2);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

Enclosure best_center_enclosure(const StarBody& body) {
    const double r_min = body.nodes().minCoeff();
    const double bound = 0.95 * r_min;

    auto ratio = [&](double a, double psi) {
        const Spread s = enclosure_at(body, a, psi);
        return s.outr / s.inr;
    };

    // Axisymmetric bodies: the center stays on the symmetry axis (1D search,
    // negative offsets cover the antipodal direction).  Curves: coarse scan
    // of directions, then refine the best one.
    double best_a = 0.0, best_psi = 0.0;
    double best = ratio(0.0, 0.0);
    const int n_dirs = body.mode() == BodyMode::PeriodicCurve ? 16 : 1;
    for (int d = 0; d < n_dirs; ++d) {
        const double psi = 2.0 * std::numbers::pi * d / n_dirs;
        const double a =
            golden_min(n_dirs == 1 ? -bound : 0.0, bound,
                       [&](double aa) { return ratio(aa, psi); });
        const double v = ratio(a, psi);
        if (v < best) {
            best = v;
            best_a = a;
            best_psi = psi;
        }
    }
    const Spread s = enclosure_at(body, best_a, best_psi);
    return {s.inr, s.outr, std::abs(best_a)};
}

} // namespace hyperflow
