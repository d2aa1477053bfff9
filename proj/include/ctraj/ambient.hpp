#pragma once

#include <array>
#include <cmath>
#include <string>

#include "ctraj/errors.hpp"

namespace ctraj {

/// Metric signature of the ambient model space. lorentz4 negates exactly the
/// fourth (t) component in the inner product.
enum class Signature { euclidean3, euclidean4, lorentz4 };

constexpr int dimension(Signature sig) {
    return sig == Signature::euclidean3 ? 3 : 4;
}

inline const char* signature_name(Signature sig) {
    switch (sig) {
        case Signature::euclidean3: return "euclidean3";
        case Signature::euclidean4: return "euclidean4";
        case Signature::lorentz4: return "lorentz4";
    }
    return "?";
}

/// Point or tangent vector of an ambient model space. The same type carries
/// base points, velocities, field values and frame vectors; the signature tag
/// decides how the inner product treats the fourth component. For euclidean3
/// the fourth slot is unused and kept at zero.
struct AmbientVector {
    Signature sig{Signature::euclidean3};
    std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

    static AmbientVector r3(double x, double y, double z) {
        return {Signature::euclidean3, {x, y, z, 0.0}};
    }
    static AmbientVector r4(double x, double y, double z, double t) {
        return {Signature::euclidean4, {x, y, z, t}};
    }
    static AmbientVector l4(double x, double y, double z, double t) {
        return {Signature::lorentz4, {x, y, z, t}};
    }
    static AmbientVector zero(Signature s) { return {s, {0.0, 0.0, 0.0, 0.0}}; }
    static AmbientVector axis(Signature s, int i) {
        AmbientVector v = zero(s);
        v.c[static_cast<unsigned>(i)] = 1.0;
        return v;
    }

    int dim() const { return dimension(sig); }
    double operator[](int i) const { return c[static_cast<unsigned>(i)]; }
    double& operator[](int i) { return c[static_cast<unsigned>(i)]; }

    double x() const { return c[0]; }
    double y() const { return c[1]; }
    double z() const { return c[2]; }
    double t() const { return c[3]; }

    bool finite() const {
        return std::isfinite(c[0]) && std::isfinite(c[1]) && std::isfinite(c[2]) &&
               std::isfinite(c[3]);
    }
};

inline void require_same_signature(const AmbientVector& u, const AmbientVector& v,
                                   const char* op) {
    if (u.sig != v.sig) {
        throw signature_error(std::string(op) + ": signature mismatch (" +
                              signature_name(u.sig) + " vs " + signature_name(v.sig) + ")");
    }
}

inline AmbientVector operator+(const AmbientVector& u, const AmbientVector& v) {
    require_same_signature(u, v, "operator+");
    return {u.sig, {u.c[0] + v.c[0], u.c[1] + v.c[1], u.c[2] + v.c[2], u.c[3] + v.c[3]}};
}

inline AmbientVector operator-(const AmbientVector& u, const AmbientVector& v) {
    require_same_signature(u, v, "operator-");
    return {u.sig, {u.c[0] - v.c[0], u.c[1] - v.c[1], u.c[2] - v.c[2], u.c[3] - v.c[3]}};
}

inline AmbientVector operator-(const AmbientVector& u) {
    return {u.sig, {-u.c[0], -u.c[1], -u.c[2], -u.c[3]}};
}

inline AmbientVector operator*(double a, const AmbientVector& u) {
    return {u.sig, {a * u.c[0], a * u.c[1], a * u.c[2], a * u.c[3]}};
}

inline AmbientVector operator*(const AmbientVector& u, double a) { return a * u; }

inline AmbientVector operator/(const AmbientVector& u, double a) { return (1.0 / a) * u; }

/// Ambient inner product; symmetric and bilinear, with the t-term negated
/// under lorentz4.
inline double inner(const AmbientVector& u, const AmbientVector& v) {
    require_same_signature(u, v, "inner");
    double s = u.c[0] * v.c[0] + u.c[1] * v.c[1] + u.c[2] * v.c[2];
    switch (u.sig) {
        case Signature::euclidean3: break;
        case Signature::euclidean4: s += u.c[3] * v.c[3]; break;
        case Signature::lorentz4: s -= u.c[3] * v.c[3]; break;
    }
    return s;
}

/// sqrt(|<u,u>|): the usual length in the Euclidean cases, the causal
/// magnitude in the Lorentzian one.
inline double norm(const AmbientVector& u) { return std::sqrt(std::fabs(inner(u, u))); }

/// Signature-blind sum of squared components, used for scale-aware tolerances.
inline double component_norm_sq(const AmbientVector& u) {
    return u.c[0] * u.c[0] + u.c[1] * u.c[1] + u.c[2] * u.c[2] + u.c[3] * u.c[3];
}

inline double component_norm(const AmbientVector& u) {
    return std::sqrt(component_norm_sq(u));
}

enum class CausalClass { spacelike, timelike, lightlike };

inline const char* causal_class_name(CausalClass cls) {
    switch (cls) {
        case CausalClass::spacelike: return "spacelike";
        case CausalClass::timelike: return "timelike";
        case CausalClass::lightlike: return "lightlike";
    }
    return "?";
}

struct CausalNorm {
    double magnitude;
    CausalClass cls;
};

/// Causal classification of <u,u> with a scale-aware band around the light
/// cone: |<u,u>| <= 1e-12 * (component magnitude)^2 counts as lightlike.
inline CausalNorm causal_norm(const AmbientVector& u) {
    const double q = inner(u, u);
    const double scale = component_norm_sq(u);
    CausalClass cls;
    if (std::fabs(q) <= 1e-12 * scale) {
        cls = CausalClass::lightlike;
    } else {
        cls = q > 0.0 ? CausalClass::spacelike : CausalClass::timelike;
    }
    return {std::sqrt(std::fabs(q)), cls};
}

/// Standard R^3 cross product.
inline AmbientVector cross3(const AmbientVector& u, const AmbientVector& v) {
    require_same_signature(u, v, "cross3");
    if (u.sig != Signature::euclidean3) {
        throw signature_error("cross3: requires euclidean3 operands");
    }
    return AmbientVector::r3(u.c[1] * v.c[2] - u.c[2] * v.c[1],
                             u.c[2] * v.c[0] - u.c[0] * v.c[2],
                             u.c[0] * v.c[1] - u.c[1] * v.c[0]);
}

/// Determinant of the 4x4 matrix with columns (c1,c2,c3,c4), expanded by
/// complementary 2x2 minors of the (c1,c2) and (c3,c4) column pairs. With
/// this arrangement a swap of c1 and c2 negates the result bit-for-bit.
inline double det4(const AmbientVector& c1, const AmbientVector& c2,
                   const AmbientVector& c3, const AmbientVector& c4) {
    auto m = [](const AmbientVector& a, const AmbientVector& b, int i, int j) {
        return a.c[static_cast<unsigned>(i)] * b.c[static_cast<unsigned>(j)] -
               a.c[static_cast<unsigned>(j)] * b.c[static_cast<unsigned>(i)];
    };
    return m(c1, c2, 0, 1) * m(c3, c4, 2, 3) - m(c1, c2, 0, 2) * m(c3, c4, 1, 3) +
           m(c1, c2, 0, 3) * m(c3, c4, 1, 2) + m(c1, c2, 1, 2) * m(c3, c4, 0, 3) -
           m(c1, c2, 1, 3) * m(c3, c4, 0, 2) + m(c1, c2, 2, 3) * m(c3, c4, 0, 1);
}

namespace detail {

/// Normalizes p onto the unit quadric of its signature: p / sqrt(|<p,p>|).
inline AmbientVector unit_quadric_point(const AmbientVector& p) {
    const double pp = inner(p, p);
    if (std::fabs(pp) <= 1e-12 * component_norm_sq(p) || pp == 0.0) {
        throw manifold_error("sign-degenerate base point: |<p,p>| ~ 0");
    }
    return p / std::sqrt(std::fabs(pp));
}

/// Orthonormal basis of the tangent space at a unit quadric point, built by
/// signature-aware Gram-Schmidt over the coordinate axes in a fixed order.
/// The induced metric on the tangent space is positive definite for both
/// quadrics, so plain normalization applies.
inline std::array<AmbientVector, 3> tangent_basis(const AmbientVector& base) {
    const double bb = inner(base, base);  // +1 on the sphere, -1 on the hyperboloid
    std::array<AmbientVector, 3> out{AmbientVector::zero(base.sig),
                                     AmbientVector::zero(base.sig),
                                     AmbientVector::zero(base.sig)};
    int found = 0;
    for (int axis = 0; axis < 4 && found < 3; ++axis) {
        AmbientVector w = AmbientVector::axis(base.sig, axis);
        w = w - (inner(w, base) / bb) * base;
        for (int j = 0; j < found; ++j) {
            w = w - inner(w, out[static_cast<unsigned>(j)]) * out[static_cast<unsigned>(j)];
        }
        const double nsq = inner(w, w);
        if (nsq > 1e-6) {
            out[static_cast<unsigned>(found++)] = w / std::sqrt(nsq);
        }
    }
    if (found < 3) {
        throw manifold_error("tangent basis construction failed at base point");
    }
    return out;
}

/// Tangent cross product at (a possibly un-normalized) base point, without
/// tangency checks on u and v. Solves <X, b_i> = det(u, v, b_i, p) over an
/// orthonormal tangent basis {b_i}; the index raising implied by the
/// Lorentzian inner product is absorbed by expanding in the basis.
inline AmbientVector cross_on_quadric(const AmbientVector& p, const AmbientVector& u,
                                      const AmbientVector& v) {
    const AmbientVector base = unit_quadric_point(p);
    const auto basis = tangent_basis(base);
    AmbientVector x = AmbientVector::zero(p.sig);
    for (const auto& b : basis) {
        x = x + det4(u, v, b, base) * b;
    }
    return x;
}

}  // namespace detail

/// Cross product of tangent vectors u, v at a point p of the unit quadric
/// (S^3 under euclidean4, H^3 under lorentz4): the unique tangent vector X
/// at p with <X,w> = det(u,v,w,p) for every tangent w. Antisymmetric in
/// (u,v); orthogonal to u, v and p.
inline AmbientVector cross4(const AmbientVector& p, const AmbientVector& u,
                            const AmbientVector& v, double tangency_tol = 1e-9) {
    require_same_signature(p, u, "cross4");
    require_same_signature(p, v, "cross4");
    if (p.sig == Signature::euclidean3) {
        throw signature_error("cross4: requires a 4-component signature");
    }
    const AmbientVector base = detail::unit_quadric_point(p);
    if (std::fabs(inner(base, u)) > tangency_tol || std::fabs(inner(base, v)) > tangency_tol) {
        throw tangency_error("cross4: input not tangent at the base point");
    }
    return detail::cross_on_quadric(p, u, v);
}

}  // namespace ctraj
