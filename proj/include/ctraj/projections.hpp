#pragma once

#include <array>
#include <cmath>
#include <string>

#include "ctraj/ambient.hpp"
#include "ctraj/errors.hpp"
#include "ctraj/space_form.hpp"

namespace ctraj {

using PlotPoint = std::array<double, 3>;

namespace detail {

/// Poles are restricted to the canonical axis points of S^3.
inline int pole_axis(const AmbientVector& pole, double& sign) {
    if (pole.sig != Signature::euclidean4) {
        throw usage_error("stereographic pole must be a euclidean4 vector");
    }
    int axis = -1;
    for (int i = 0; i < 4; ++i) {
        if (std::fabs(pole[i]) > 1e-12) {
            if (axis >= 0 || std::fabs(std::fabs(pole[i]) - 1.0) > 1e-12) {
                throw usage_error("stereographic pole must be a canonical axis point (+-e_i)");
            }
            axis = i;
            sign = pole[i] > 0 ? 1.0 : -1.0;
        }
    }
    if (axis < 0) throw usage_error("stereographic pole must be nonzero");
    return axis;
}

}  // namespace detail

/// Stereographic projection of S^3 from a canonical axis pole (default
/// (0,0,0,1)): the three components other than the pole axis divided by
/// 1 - <p, pole>.
inline PlotPoint stereographic_s3(const AmbientVector& p,
                                  const AmbientVector& pole = AmbientVector::r4(0, 0, 0, 1)) {
    require_form_signature(SpaceForm::sphere(), p, "stereographic_s3");
    if (std::fabs(constraint_residual(SpaceForm::sphere(), p)) > 1e-6) {
        throw manifold_error("stereographic_s3: point not on S^3");
    }
    double sign = 1.0;
    const int axis = detail::pole_axis(pole, sign);
    const double denom = 1.0 - sign * p[axis];
    if (std::fabs(denom) < 1e-6) {
        throw projection_singular_error("stereographic_s3: point within 1e-6 of the pole");
    }
    PlotPoint out{};
    int k = 0;
    for (int i = 0; i < 4; ++i) {
        if (i == axis) continue;
        out[static_cast<unsigned>(k++)] = p[i] / denom;
    }
    return out;
}

/// Poincare ball model of H^3: (x,y,z) / (1+t). Image norm < 1.
inline PlotPoint poincare_ball(const AmbientVector& p) {
    require_form_signature(SpaceForm::hyperbolic(), p, "poincare_ball");
    if (std::fabs(constraint_residual(SpaceForm::hyperbolic(), p)) > 1e-6) {
        throw manifold_error("poincare_ball: point not on H^3");
    }
    const double denom = 1.0 + p.t();
    return {p.x() / denom, p.y() / denom, p.z() / denom};
}

/// Upper half-space model of H^3 with z as the distinguished axis:
/// (x, y, 1) / (t+z). Third coordinate > 0.
inline PlotPoint upper_half_space(const AmbientVector& p) {
    require_form_signature(SpaceForm::hyperbolic(), p, "upper_half_space");
    if (std::fabs(constraint_residual(SpaceForm::hyperbolic(), p)) > 1e-6) {
        throw manifold_error("upper_half_space: point not on H^3");
    }
    const double denom = p.t() + p.z();
    if (denom <= 1e-12) {
        throw projection_singular_error("upper_half_space: t + z too close to 0");
    }
    return {p.x() / denom, p.y() / denom, 1.0 / denom};
}

}  // namespace ctraj
