#pragma once

#include <cmath>

#include "ctraj/ambient.hpp"
#include "ctraj/errors.hpp"

namespace ctraj {

enum class SpaceFormKind { euclidean, sphere, hyperbolic };

/// One of the three model geometries: flat R^3, the unit sphere S^3 in R^4,
/// or the t>0 sheet of the quadric <p,p> = -1 in Lorentzian R^4.
struct SpaceForm {
    SpaceFormKind kind{SpaceFormKind::euclidean};

    static constexpr SpaceForm euclidean() { return {SpaceFormKind::euclidean}; }
    static constexpr SpaceForm sphere() { return {SpaceFormKind::sphere}; }
    static constexpr SpaceForm hyperbolic() { return {SpaceFormKind::hyperbolic}; }

    Signature signature() const {
        switch (kind) {
            case SpaceFormKind::euclidean: return Signature::euclidean3;
            case SpaceFormKind::sphere: return Signature::euclidean4;
            case SpaceFormKind::hyperbolic: return Signature::lorentz4;
        }
        return Signature::euclidean3;
    }

    int dim() const { return dimension(signature()); }

    /// Sign of <p,p> on the defining quadric: +1 sphere, -1 hyperbolic,
    /// 0 when there is no constraint.
    int quadric_sign() const {
        switch (kind) {
            case SpaceFormKind::euclidean: return 0;
            case SpaceFormKind::sphere: return +1;
            case SpaceFormKind::hyperbolic: return -1;
        }
        return 0;
    }

    const char* name() const {
        switch (kind) {
            case SpaceFormKind::euclidean: return "euclidean";
            case SpaceFormKind::sphere: return "sphere";
            case SpaceFormKind::hyperbolic: return "hyperbolic";
        }
        return "?";
    }
};

inline bool operator==(SpaceForm a, SpaceForm b) { return a.kind == b.kind; }
inline bool operator!=(SpaceForm a, SpaceForm b) { return a.kind != b.kind; }

inline void require_form_signature(SpaceForm form, const AmbientVector& p, const char* op) {
    if (p.sig != form.signature()) {
        throw signature_error(std::string(op) + ": vector signature " +
                              signature_name(p.sig) + " does not match " + form.name());
    }
}

/// Defect of the defining equation at p: 0 in R^3, <p,p>-1 on S^3,
/// <p,p>+1 on H^3. Hyperbolic points must lie on the t>0 sheet.
inline double constraint_residual(SpaceForm form, const AmbientVector& p) {
    require_form_signature(form, p, "constraint_residual");
    switch (form.kind) {
        case SpaceFormKind::euclidean: return 0.0;
        case SpaceFormKind::sphere: return inner(p, p) - 1.0;
        case SpaceFormKind::hyperbolic:
            if (p.t() <= 0.0) {
                throw manifold_error("hyperbolic point on the wrong sheet (t <= 0)");
            }
            return inner(p, p) + 1.0;
    }
    return 0.0;
}

/// Radial rescale onto the quadric: p / sqrt(|<p,p>|); identity in R^3.
inline AmbientVector project_point(SpaceForm form, const AmbientVector& p) {
    require_form_signature(form, p, "project_point");
    if (form.kind == SpaceFormKind::euclidean) return p;
    const double pp = inner(p, p);
    if (std::fabs(pp) <= 1e-12 * component_norm_sq(p) || pp == 0.0) {
        throw manifold_error("project_point: sign-degenerate input");
    }
    if (form.kind == SpaceFormKind::sphere) {
        if (pp < 0.0) throw manifold_error("project_point: <p,p> < 0 for sphere input");
        return p / std::sqrt(pp);
    }
    if (pp > 0.0) throw manifold_error("project_point: <p,p> > 0 for hyperbolic input");
    if (p.t() <= 0.0) throw manifold_error("project_point: hyperbolic sheet t <= 0");
    return p / std::sqrt(-pp);
}

/// Tangential part of v at p (p assumed on the manifold): identity in R^3,
/// v - <v,p>p on S^3, v + <v,p>p on H^3. Idempotent.
inline AmbientVector project_tangent(SpaceForm form, const AmbientVector& p,
                                     const AmbientVector& v) {
    require_form_signature(form, p, "project_tangent");
    require_same_signature(p, v, "project_tangent");
    switch (form.kind) {
        case SpaceFormKind::euclidean: return v;
        case SpaceFormKind::sphere: return v - inner(v, p) * p;
        case SpaceFormKind::hyperbolic: return v + inner(v, p) * p;
    }
    return v;
}

/// Covariant acceleration of a curve with velocity v and ambient second
/// derivative a_amb, via the ambient connection correction:
/// a_amb in R^3, a_amb + <v,v>p on S^3, a_amb - <v,v>p on H^3.
inline AmbientVector covariant_acceleration(SpaceForm form, const AmbientVector& p,
                                            const AmbientVector& v,
                                            const AmbientVector& a_amb) {
    require_form_signature(form, p, "covariant_acceleration");
    switch (form.kind) {
        case SpaceFormKind::euclidean: return a_amb;
        case SpaceFormKind::sphere: return a_amb + inner(v, v) * p;
        case SpaceFormKind::hyperbolic: return a_amb - inner(v, v) * p;
    }
    return a_amb;
}

namespace detail {

/// Tangent cross product at p without tangency checks; cross3 ignores p.
inline AmbientVector space_cross_unchecked(SpaceForm form, const AmbientVector& p,
                                           const AmbientVector& u, const AmbientVector& v) {
    if (form.kind == SpaceFormKind::euclidean) return cross3(u, v);
    return cross_on_quadric(p, u, v);
}

}  // namespace detail

/// Cross product of the space form at base point p: cross3 in R^3, the
/// det-defined tangent product on the quadrics.
inline AmbientVector space_cross(SpaceForm form, const AmbientVector& p,
                                 const AmbientVector& u, const AmbientVector& v,
                                 double tangency_tol = 1e-9) {
    if (form.kind == SpaceFormKind::euclidean) return cross3(u, v);
    return cross4(p, u, v, tangency_tol);
}

/// Collinearity criterion used by the geodesic test: |u x v| small against
/// the scale of u.
inline bool is_collinear_at(SpaceForm form, const AmbientVector& p, const AmbientVector& u,
                            const AmbientVector& v) {
    const AmbientVector x = detail::space_cross_unchecked(form, p, u, v);
    return norm(x) <= 1e-8 * (1.0 + norm(u));
}

}  // namespace ctraj
