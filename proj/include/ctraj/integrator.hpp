#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ctraj/ambient.hpp"
#include "ctraj/errors.hpp"
#include "ctraj/fields.hpp"
#include "ctraj/space_form.hpp"

namespace ctraj {

/// One point of a trajectory: arc length, position on the space form and
/// unit tangent velocity.
struct TrajectoryState {
    double s{0.0};
    AmbientVector position{};
    AmbientVector velocity{};
};

/// A fully specified integration problem. q = 0 is accepted as the geodesic
/// limit (the defining equation wants q != 0, but geodesics make useful test
/// scaffolding and are flagged as such).
struct Scenario {
    SpaceForm form{SpaceForm::euclidean()};
    FieldSpec field{};
    double q{1.0};
    AmbientVector initial_position{};
    AmbientVector initial_velocity{};
    double s_max{1.0};
    double step{1e-3};
    int sample_stride{1};
};

struct ValidationResult {
    TrajectoryState state;
    double position_correction{0.0};
    double velocity_correction{0.0};
    /// Set when any correction exceeded 1e-6.
    bool corrected{false};
};

struct TrajectorySample {
    TrajectoryState state;
    AmbientVector field_value{};
    double lambda_value{0.0};
    /// Running trapezoid value of (1/2) * integral of lambda(gamma(t)) dt
    /// from 0 to s, accumulated over every integration step.
    double half_lambda_integral{0.0};
};

struct Trajectory {
    Scenario scenario;
    std::vector<TrajectorySample> samples;
    bool initial_corrected{false};
    double position_correction{0.0};
    double velocity_correction{0.0};
    bool geodesic_mode{false};

    double sample_spacing() const { return scenario.step * scenario.sample_stride; }
    std::size_t size() const { return samples.size(); }
};

namespace detail {

inline void check_scenario(const Scenario& sc) {
    if (sc.form != sc.field.form()) {
        throw usage_error("scenario space form does not match the field's space form");
    }
    if (!(sc.step > 0.0)) throw usage_error("scenario step must be positive");
    if (!(sc.s_max > 0.0)) throw usage_error("scenario s_max must be positive");
    if (sc.sample_stride < 1) throw usage_error("scenario sample_stride must be >= 1");
    if (!std::isfinite(sc.q)) throw usage_error("scenario q must be finite");
}

}  // namespace detail

/// Projects the initial position onto the manifold, tangent-projects and
/// normalizes the initial velocity, and reports how large the corrections
/// were. Data that needed more than a 1e-6 nudge comes back flagged.
inline ValidationResult validate_initial(const Scenario& sc) {
    detail::check_scenario(sc);
    require_form_signature(sc.form, sc.initial_position, "validate_initial");
    require_form_signature(sc.form, sc.initial_velocity, "validate_initial");
    ValidationResult r;
    const AmbientVector p = project_point(sc.form, sc.initial_position);
    r.position_correction = component_norm(p - sc.initial_position);
    AmbientVector v = project_tangent(sc.form, p, sc.initial_velocity);
    const double speed = norm(v);
    if (speed < 1e-12) {
        throw degenerate_input_error("validate_initial: initial velocity is zero (or normal to "
                                     "the manifold)");
    }
    v = v / speed;
    r.velocity_correction = component_norm(v - sc.initial_velocity);
    r.corrected = r.position_correction > 1e-6 || r.velocity_correction > 1e-6;
    r.state = TrajectoryState{0.0, p, v};
    return r;
}

struct OdeDerivative {
    AmbientVector d_position;
    AmbientVector d_velocity;
};

/// First-order right-hand side of the trajectory equation: position' = v and
/// v' = q V x v - eps <v,v> p, where eps is the quadric sign (+1 sphere,
/// -1 hyperbolic, 0 euclidean). Tolerant of slightly off-manifold states so
/// Runge-Kutta stages can evaluate it directly.
inline OdeDerivative ode_rhs(SpaceForm form, const FieldSpec& field, double q,
                             const TrajectoryState& state) {
    const AmbientVector& p = state.position;
    const AmbientVector& v = state.velocity;
    const AmbientVector field_value = detail::eval_field(field, p);
    AmbientVector accel = q * detail::space_cross_unchecked(form, p, field_value, v);
    const int eps = form.quadric_sign();
    if (eps != 0) {
        accel = accel - (static_cast<double>(eps) * inner(v, v)) * p;
    }
    return {v, accel};
}

namespace detail {

/// Marching state of the fixed-step loop. Positions and velocities are
/// accumulated in extended precision so that the roundoff floor of long
/// runs stays below the scheme's O(h^4) truncation error; the right-hand
/// side itself is evaluated in double, whose rounding only enters scaled
/// by h.
struct MarchState {
    std::array<long double, 4> p{};
    std::array<long double, 4> v{};
};

inline MarchState to_march(const TrajectoryState& st) {
    MarchState m;
    for (int i = 0; i < 4; ++i) {
        m.p[static_cast<unsigned>(i)] = st.position[i];
        m.v[static_cast<unsigned>(i)] = st.velocity[i];
    }
    return m;
}

inline TrajectoryState from_march(double s, Signature sig, const MarchState& m) {
    TrajectoryState st;
    st.s = s;
    st.position = AmbientVector::zero(sig);
    st.velocity = AmbientVector::zero(sig);
    for (int i = 0; i < 4; ++i) {
        st.position[i] = static_cast<double>(m.p[static_cast<unsigned>(i)]);
        st.velocity[i] = static_cast<double>(m.v[static_cast<unsigned>(i)]);
    }
    return st;
}

inline long double metric_dot(Signature sig, const std::array<long double, 4>& a,
                              const std::array<long double, 4>& b) {
    long double s = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    if (sig == Signature::euclidean4) s += a[3] * b[3];
    if (sig == Signature::lorentz4) s -= a[3] * b[3];
    return s;
}

/// One RK4 step plus projection, in place. Throws integration_error when
/// the position leaves the quadric's sign domain.
inline void march_step(SpaceForm form, const FieldSpec& field, double q, double s,
                       MarchState& m, double h) {
    const Signature sig = form.signature();

    auto eval = [&](const std::array<long double, 4>& lp, const std::array<long double, 4>& lv,
                    std::array<double, 4>& dp, std::array<double, 4>& dv) {
        TrajectoryState st;
        st.position = AmbientVector::zero(sig);
        st.velocity = AmbientVector::zero(sig);
        for (int i = 0; i < 4; ++i) {
            st.position[i] = static_cast<double>(lp[static_cast<unsigned>(i)]);
            st.velocity[i] = static_cast<double>(lv[static_cast<unsigned>(i)]);
        }
        const OdeDerivative d = ode_rhs(form, field, q, st);
        dp = d.d_position.c;
        dv = d.d_velocity.c;
    };

    std::array<double, 4> k1p{}, k1v{}, k2p{}, k2v{}, k3p{}, k3v{}, k4p{}, k4v{};
    std::array<long double, 4> tp{}, tv{};
    const long double lh = h;

    eval(m.p, m.v, k1p, k1v);
    for (unsigned i = 0; i < 4; ++i) {
        tp[i] = m.p[i] + 0.5L * lh * k1p[i];
        tv[i] = m.v[i] + 0.5L * lh * k1v[i];
    }
    eval(tp, tv, k2p, k2v);
    for (unsigned i = 0; i < 4; ++i) {
        tp[i] = m.p[i] + 0.5L * lh * k2p[i];
        tv[i] = m.v[i] + 0.5L * lh * k2v[i];
    }
    eval(tp, tv, k3p, k3v);
    for (unsigned i = 0; i < 4; ++i) {
        tp[i] = m.p[i] + lh * k3p[i];
        tv[i] = m.v[i] + lh * k3v[i];
    }
    eval(tp, tv, k4p, k4v);

    const long double w = lh / 6.0L;
    for (unsigned i = 0; i < 4; ++i) {
        m.p[i] += w * (k1p[i] + 2.0L * k2p[i] + 2.0L * k3p[i] + k4p[i]);
        m.v[i] += w * (k1v[i] + 2.0L * k2v[i] + 2.0L * k3v[i] + k4v[i]);
    }

    if (form.kind != SpaceFormKind::euclidean) {
        const long double pp = metric_dot(sig, m.p, m.p);
        const long double scale_sq =
            m.p[0] * m.p[0] + m.p[1] * m.p[1] + m.p[2] * m.p[2] + m.p[3] * m.p[3];
        const bool degenerate = std::fabs(pp) <= 1e-12L * scale_sq || pp == 0.0L;
        const bool wrong_sign = form.kind == SpaceFormKind::sphere ? pp < 0.0L : pp > 0.0L;
        const bool wrong_sheet = form.kind == SpaceFormKind::hyperbolic && m.p[3] <= 0.0L;
        if (degenerate || wrong_sign || wrong_sheet) {
            throw integration_error("integration aborted at s = " + std::to_string(s) +
                                    ": position projection failed (sign-degenerate or wrong "
                                    "sheet)");
        }
        const long double scale = 1.0L / std::sqrt(std::fabs(pp));
        for (unsigned i = 0; i < 4; ++i) m.p[i] *= scale;
        const long double vp = metric_dot(sig, m.v, m.p);
        const long double corr = form.kind == SpaceFormKind::sphere ? -vp : vp;
        for (unsigned i = 0; i < 4; ++i) m.v[i] += corr * m.p[i];
    }
    const long double vv = metric_dot(sig, m.v, m.v);
    if (!(vv > 0.0L)) {
        throw integration_error("integration aborted at s = " + std::to_string(s) +
                                ": velocity renormalization failed");
    }
    const long double vscale = 1.0L / std::sqrt(vv);
    for (unsigned i = 0; i < 4; ++i) m.v[i] *= vscale;
}

}  // namespace detail

/// One classical Runge-Kutta step of size h followed by constraint
/// projection: the position is rescaled onto the quadric, the velocity
/// tangent-projected and renormalized to unit length.
inline TrajectoryState step(SpaceForm form, const FieldSpec& field, double q,
                            const TrajectoryState& state, double h) {
    if (!(h > 0.0)) throw usage_error("step: h must be positive");
    detail::MarchState m = detail::to_march(state);
    detail::march_step(form, field, q, state.s, m, h);
    return detail::from_march(state.s + h, form.signature(), m);
}

/// Fixed-step march from 0 to s_max recording every sample_stride-th state,
/// with the field value and the running conformal-factor integral attached
/// to each recorded sample.
inline Trajectory integrate(const Scenario& sc) {
    const ValidationResult validated = validate_initial(sc);
    Trajectory out;
    out.scenario = sc;
    out.initial_corrected = validated.corrected;
    out.position_correction = validated.position_correction;
    out.velocity_correction = validated.velocity_correction;
    out.geodesic_mode = sc.q == 0.0;

    const long n_steps = static_cast<long>(std::floor(sc.s_max / sc.step + 1e-9));
    out.samples.reserve(static_cast<std::size_t>(n_steps / sc.sample_stride) + 1);

    TrajectoryState state = validated.state;
    detail::MarchState march = detail::to_march(state);
    double lambda_prev = detail::eval_lambda(sc.field, state.position);
    double half_integral = 0.0;

    auto record = [&](const TrajectoryState& st, double half_int) {
        TrajectorySample sample;
        sample.state = st;
        sample.field_value = detail::eval_field(sc.field, st.position);
        sample.lambda_value = detail::eval_lambda(sc.field, st.position);
        sample.half_lambda_integral = half_int;
        out.samples.push_back(sample);
    };

    record(state, 0.0);
    for (long i = 1; i <= n_steps; ++i) {
        detail::march_step(sc.form, sc.field, sc.q, static_cast<double>(i - 1) * sc.step,
                           march, sc.step);
        state = detail::from_march(static_cast<double>(i) * sc.step, sc.form.signature(), march);
        if (!state.position.finite() || !state.velocity.finite()) {
            throw integration_error("non-finite state at s = " + std::to_string(state.s) +
                                    "; last good s = " +
                                    std::to_string(static_cast<double>(i - 1) * sc.step));
        }
        const double lambda_here = detail::eval_lambda(sc.field, state.position);
        half_integral += 0.25 * sc.step * (lambda_prev + lambda_here);
        lambda_prev = lambda_here;
        if (i % sc.sample_stride == 0) {
            record(state, half_integral);
        }
    }
    return out;
}

}  // namespace ctraj
