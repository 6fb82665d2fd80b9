#pragma once

#include "hyperflow/starbody.hpp"

#include <vector>

namespace hyperflow {

/// Lebesgue measure of the k-dimensional unit sphere.
double sphere_measure(int k);

/// Quermassintegrals W_0..W_n and curvature integrals V_0..V_{n-1} of one
/// body.  V[j] = int_{dK} H_{n-1-j} dmu (so V[n-1] is the boundary area);
/// W_n = omega_{n-1}/n identically.
struct QuermassVector {
    int dimension = 0;
    std::vector<double> W; // size n+1
    std::vector<double> V; // size n

    double area() const { return V.back(); }
    double volume() const { return W.front(); }
    /// int H_k dmu
    double curvature_integral(int k) const { return V.at(dimension - 1 - k); }
};

/// int_{dK} H_k dmu by spectral quadrature.
double curvature_integral(const StarBody& body, int k);
double curvature_integral(const GeometryFrame& frame, int k);

/// Enclosed hyperbolic volume by exact radial antiderivatives of
/// sinh^{n-1} under the angular quadrature.
double volume(const StarBody& body);

QuermassVector quermassintegrals(const StarBody& body);
QuermassVector quermassintegrals(const GeometryFrame& frame);

/// V_{n-1-k} - n (W_{k+1} + k/(n-k+1) W_{k-1}); a coefficient identity of
/// the even/odd expansions, zero to rounding.
double relation_residual(const StarBody& body, int k);
double relation_residual(const QuermassVector& qv, int k);

/// Volume of the parallel set K[rho] from the Steiner formula.  V_list is
/// indexed like QuermassVector::V.
double steiner_volume(const std::vector<double>& V_list, double vol, double rho,
                      int n);

/// Relative residual of the Minkowski identity
/// int H_k u dmu = int H_{k-1} cosh(r) dmu.
double minkowski_residual(const StarBody& body, int k);
double minkowski_residual(const GeometryFrame& frame, int k);

/// int cosh(r)/H_1 dmu - int u dmu >= 0, equality iff geodesic sphere.
double heintze_karcher_deficit(const StarBody& body);
double heintze_karcher_deficit(const GeometryFrame& frame);

} // namespace hyperflow
