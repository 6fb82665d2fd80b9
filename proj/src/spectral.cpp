#include "hyperflow/spectral.hpp"

#include "hyperflow/errors.hpp"
#include "hyperflow/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace hyperflow {

Eigen::VectorXd SpectralBasis::analyze(const Eigen::VectorXd& values) const {
    if (values.size() != n_nodes_)
        throw ArgumentError("analyze: node count mismatch");
    return analysis_ * values;
}

Eigen::VectorXd SpectralBasis::synth(const Eigen::VectorXd& c) const {
    return synth_ * c;
}
Eigen::VectorXd SpectralBasis::synth_d1(const Eigen::VectorXd& c) const {
    return synth_d1_ * c;
}
Eigen::VectorXd SpectralBasis::synth_d2(const Eigen::VectorXd& c) const {
    return synth_d2_ * c;
}

PeriodicBasis::PeriodicBasis(int n_nodes) {
    if (n_nodes < 8) throw ArgumentError("PeriodicBasis: need at least 8 nodes");
    n_nodes_ = n_nodes;
    const int freq_max = std::max(8, n_nodes / 4) - 1; // frequencies 0..freq_max
    n_modes_ = 2 * freq_max + 1;

    angles_.resize(n_nodes_);
    quad_w_.resize(n_nodes_);
    const double h = 2.0 * std::numbers::pi / n_nodes_;
    for (int j = 0; j < n_nodes_; ++j) {
        angles_(j) = h * j;
        quad_w_(j) = h;
    }

    synth_.resize(n_nodes_, n_modes_);
    synth_d1_.resize(n_nodes_, n_modes_);
    synth_d2_.resize(n_nodes_, n_modes_);
    analysis_.resize(n_modes_, n_nodes_);
    for (int j = 0; j < n_nodes_; ++j) {
        const double t = angles_(j);
        synth_(j, 0) = 1.0;
        synth_d1_(j, 0) = 0.0;
        synth_d2_(j, 0) = 0.0;
        analysis_(0, j) = 1.0 / n_nodes_;
        for (int m = 1; m <= freq_max; ++m) {
            const double c = std::cos(m * t), s = std::sin(m * t);
            const int ia = 2 * m - 1, ib = 2 * m;
            synth_(j, ia) = c;
            synth_(j, ib) = s;
            synth_d1_(j, ia) = -m * s;
            synth_d1_(j, ib) = m * c;
            synth_d2_(j, ia) = -m * m * c;
            synth_d2_(j, ib) = -m * m * s;
            // exact discrete orthogonality on the uniform grid
            analysis_(ia, j) = 2.0 * c / n_nodes_;
            analysis_(ib, j) = 2.0 * s / n_nodes_;
        }
    }
}

double PeriodicBasis::evaluate(const Eigen::VectorXd& coeffs, double angle) const {
    const int freq_max = (n_modes_ - 1) / 2;
    double v = coeffs(0);
    for (int m = 1; m <= freq_max; ++m)
        v += coeffs(2 * m - 1) * std::cos(m * angle) +
             coeffs(2 * m) * std::sin(m * angle);
    return v;
}

ProfileBasis::ProfileBasis(int dimension, int n_nodes) : dim_(dimension) {
    if (dimension < 3) throw ArgumentError("ProfileBasis: dimension must be >= 3");
    if (n_nodes < 8) throw ArgumentError("ProfileBasis: need at least 8 nodes");
    n_nodes_ = n_nodes;
    n_modes_ = std::max(8, n_nodes / 4);

    const double alpha = 0.5 * (dimension - 3);
    const JacobiRule rule = gauss_jacobi(n_nodes, alpha);

    angles_.resize(n_nodes_);
    quad_w_.resize(n_nodes_);
    for (int j = 0; j < n_nodes_; ++j) {
        angles_(j) = std::acos(rule.x[j]);
        quad_w_(j) = rule.w[j];
    }

    synth_.resize(n_nodes_, n_modes_);
    synth_d1_.resize(n_nodes_, n_modes_);
    synth_d2_.resize(n_nodes_, n_modes_);
    for (int j = 0; j < n_nodes_; ++j) {
        const double p = angles_(j);
        for (int m = 0; m < n_modes_; ++m) {
            const double c = std::cos(m * p), s = std::sin(m * p);
            synth_(j, m) = c;
            synth_d1_(j, m) = -m * s;
            synth_d2_(j, m) = -m * m * c;
        }
    }

    // weighted least squares: A = (sqrt(W) V)^+ sqrt(W)
    Eigen::VectorXd sw = quad_w_.cwiseSqrt();
    Eigen::MatrixXd wv = sw.asDiagonal() * synth_;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(wv);
    Eigen::MatrixXd rhs = Eigen::MatrixXd(sw.asDiagonal());
    analysis_ = qr.solve(rhs);
}

double ProfileBasis::evaluate(const Eigen::VectorXd& coeffs, double angle) const {
    double v = 0.0;
    for (int m = 0; m < n_modes_; ++m) v += coeffs(m) * std::cos(m * angle);
    return v;
}

namespace {
std::mutex cache_mutex;
std::map<int, std::shared_ptr<const PeriodicBasis>> periodic_cache;
std::map<std::pair<int, int>, std::shared_ptr<const ProfileBasis>> profile_cache;
} // namespace

std::shared_ptr<const PeriodicBasis> periodic_basis(int n_nodes) {
    std::lock_guard lock(cache_mutex);
    auto& slot = periodic_cache[n_nodes];
    if (!slot) slot = std::make_shared<PeriodicBasis>(n_nodes);
    return slot;
}

std::shared_ptr<const ProfileBasis> profile_basis(int dimension, int n_nodes) {
    std::lock_guard lock(cache_mutex);
    auto& slot = profile_cache[{dimension, n_nodes}];
    if (!slot) slot = std::make_shared<ProfileBasis>(dimension, n_nodes);
    return slot;
}

} // namespace hyperflow
