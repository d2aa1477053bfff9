#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "ctraj/ambient.hpp"
#include "ctraj/errors.hpp"
#include "ctraj/integrator.hpp"
#include "ctraj/space_form.hpp"

namespace ctraj {

/// Below this curvature a sample counts as geodesic and the normal, binormal
/// and torsion are reported as absent rather than amplified noise.
inline constexpr double geodesic_kappa_threshold = 1e-8;

/// Frenet data at one trajectory sample. N, B and tau are absent on
/// geodesic samples.
struct FrenetSample {
    double s{0.0};
    AmbientVector T{};
    double kappa{0.0};
    std::optional<AmbientVector> N;
    std::optional<AmbientVector> B;
    std::optional<double> tau;

    bool geodesic() const { return !N.has_value(); }
};

/// Curvature at a state: |q| |V x gamma'| in the space form's metric, which
/// equals the length of the covariant acceleration along a conformal
/// trajectory.
inline double curvature_at(SpaceForm form, const FieldSpec& field, double q,
                           const TrajectoryState& state) {
    const AmbientVector v_field = detail::eval_field(field, state.position);
    const AmbientVector x =
        detail::space_cross_unchecked(form, state.position, v_field, state.velocity);
    return std::fabs(q) * norm(x);
}

namespace detail {

/// Covariant acceleration (= kappa N) at sample i, from the ODE right-hand
/// side and the connection correction.
inline AmbientVector covariant_accel_at(const Trajectory& traj, std::size_t i) {
    const Scenario& sc = traj.scenario;
    const TrajectoryState& st = traj.samples[i].state;
    const OdeDerivative d = ode_rhs(sc.form, sc.field, sc.q, st);
    return covariant_acceleration(sc.form, st.position, st.velocity, d.d_velocity);
}

inline std::optional<AmbientVector> normal_at(const Trajectory& traj, std::size_t i) {
    const AmbientVector a = covariant_accel_at(traj, i);
    const double kappa = norm(a);
    if (kappa < geodesic_kappa_threshold) return std::nullopt;
    return a / kappa;
}

}  // namespace detail

/// Inner product of the field with the unit tangent at sample i (the
/// quantity whose s-derivative is lambda/2 along any conformal trajectory).
inline double tangential_component(const Trajectory& traj, std::size_t i) {
    if (i >= traj.samples.size()) throw usage_error("tangential_component: index out of range");
    const TrajectorySample& sample = traj.samples[i];
    return inner(sample.field_value, sample.state.velocity);
}

/// Frenet apparatus at sample i. T is the stored unit velocity, N the
/// normalized covariant acceleration, B = T x N at the base point. The
/// torsion is <dN/ds, B> with dN/ds from finite differences on the sample
/// grid: a centered 5-point stencil where two neighbors exist on each side,
/// falling back to centered 3-point and one-sided second-order stencils near
/// the ends. (The ambient derivative of N suffices: the connection
/// correction is proportional to <T,N> = 0.)
inline FrenetSample frenet_at(const Trajectory& traj, std::size_t i) {
    const std::size_t n = traj.samples.size();
    if (i >= n) throw usage_error("frenet_at: index out of range");
    if (n < 3) throw usage_error("frenet_at: need at least 3 samples for torsion stencils");

    const Scenario& sc = traj.scenario;
    const TrajectoryState& st = traj.samples[i].state;

    FrenetSample out;
    out.s = st.s;
    out.T = st.velocity;

    const AmbientVector accel = detail::covariant_accel_at(traj, i);
    out.kappa = norm(accel);
    if (out.kappa < geodesic_kappa_threshold) return out;

    out.N = accel / out.kappa;
    out.B = detail::space_cross_unchecked(sc.form, st.position, st.velocity, *out.N);

    const double ds = traj.sample_spacing();
    auto normal = [&](std::size_t j) { return detail::normal_at(traj, j); };

    std::optional<AmbientVector> dn;
    if (i >= 2 && i + 2 < n) {
        const auto nm2 = normal(i - 2), nm1 = normal(i - 1), np1 = normal(i + 1),
                   np2 = normal(i + 2);
        if (nm2 && nm1 && np1 && np2) {
            dn = (-1.0 * (*np2) + 8.0 * (*np1) - 8.0 * (*nm1) + *nm2) / (12.0 * ds);
        }
    } else if (i >= 1 && i + 1 < n) {
        const auto nm1 = normal(i - 1), np1 = normal(i + 1);
        if (nm1 && np1) dn = (*np1 - *nm1) / (2.0 * ds);
    } else if (i == 0) {
        const auto n1 = normal(1), n2 = normal(2);
        if (n1 && n2) dn = (-3.0 * (*out.N) + 4.0 * (*n1) - *n2) / (2.0 * ds);
    } else {  // i == n - 1
        const auto n1 = normal(n - 2), n2 = normal(n - 3);
        if (n1 && n2) dn = (3.0 * (*out.N) - 4.0 * (*n1) + *n2) / (2.0 * ds);
    }
    if (dn) out.tau = inner(*dn, *out.B);
    return out;
}

/// Frenet data at every sample.
inline std::vector<FrenetSample> frenet_series(const Trajectory& traj) {
    std::vector<FrenetSample> out;
    out.reserve(traj.samples.size());
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        out.push_back(frenet_at(traj, i));
    }
    return out;
}

}  // namespace ctraj
