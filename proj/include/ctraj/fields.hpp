#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ctraj/ambient.hpp"
#include "ctraj/errors.hpp"
#include "ctraj/space_form.hpp"

namespace ctraj {

enum class FieldKind {
    radial_r3,
    special_conformal_r3,
    conformal_s3,
    conformal_h3,
    killing_r3,
    killing_s3,
    killing_h3
};

/// A vector field from the catalog: the proper conformal generators of the
/// three space forms plus all Killing generators. Parametrized kinds carry
/// the direction vector a; Killing kinds carry an index 1..6.
struct FieldSpec {
    FieldKind kind{FieldKind::radial_r3};
    AmbientVector a{};
    int index{0};

    SpaceForm form() const {
        switch (kind) {
            case FieldKind::radial_r3:
            case FieldKind::special_conformal_r3:
            case FieldKind::killing_r3: return SpaceForm::euclidean();
            case FieldKind::conformal_s3:
            case FieldKind::killing_s3: return SpaceForm::sphere();
            case FieldKind::conformal_h3:
            case FieldKind::killing_h3: return SpaceForm::hyperbolic();
        }
        return SpaceForm::euclidean();
    }

    bool parametrized() const {
        return kind == FieldKind::special_conformal_r3 || kind == FieldKind::conformal_s3 ||
               kind == FieldKind::conformal_h3;
    }

    bool killing() const {
        return kind == FieldKind::killing_r3 || kind == FieldKind::killing_s3 ||
               kind == FieldKind::killing_h3;
    }

    std::string name() const;

    static FieldSpec radial() { return {FieldKind::radial_r3, {}, 0}; }

    static FieldSpec special_conformal(const AmbientVector& a3) {
        check_parameter(a3, Signature::euclidean3, "special_conformal_r3");
        return {FieldKind::special_conformal_r3, a3, 0};
    }

    static FieldSpec conformal_sphere(const AmbientVector& a4) {
        check_parameter(a4, Signature::euclidean4, "conformal_s3");
        return {FieldKind::conformal_s3, a4, 0};
    }

    static FieldSpec conformal_hyperbolic(const AmbientVector& a4) {
        check_parameter(a4, Signature::lorentz4, "conformal_h3");
        return {FieldKind::conformal_h3, a4, 0};
    }

    static FieldSpec killing(SpaceFormKind form, int index) {
        if (index < 1 || index > 6) {
            throw usage_error("killing field index must be in 1..6");
        }
        switch (form) {
            case SpaceFormKind::euclidean: return {FieldKind::killing_r3, {}, index};
            case SpaceFormKind::sphere: return {FieldKind::killing_s3, {}, index};
            case SpaceFormKind::hyperbolic: return {FieldKind::killing_h3, {}, index};
        }
        throw usage_error("unknown space form for killing field");
    }

private:
    static void check_parameter(const AmbientVector& a, Signature want, const char* who) {
        if (a.sig != want) {
            throw signature_error(std::string(who) + ": parameter vector has signature " +
                                  signature_name(a.sig) + ", expected " + signature_name(want));
        }
        if (component_norm_sq(a) == 0.0) {
            throw degenerate_input_error(std::string(who) + ": parameter vector a must be nonzero");
        }
    }
};

namespace detail {

// Killing generator tables. Sphere entries are rotations of R^4, hyperbolic
// entries mix rotations and boosts; both are stored exactly as componentwise
// linear maps of p = (x,y,z,t).
inline AmbientVector killing_s3_value(int index, const AmbientVector& p) {
    const double x = p.x(), y = p.y(), z = p.z(), t = p.t();
    switch (index) {
        case 1: return AmbientVector::r4(-y, x, -t, z);
        case 2: return AmbientVector::r4(-y, x, t, -z);
        case 3: return AmbientVector::r4(-z, -t, x, y);
        case 4: return AmbientVector::r4(-z, t, x, -y);
        case 5: return AmbientVector::r4(-t, z, -y, x);
        case 6: return AmbientVector::r4(-t, -z, y, x);
    }
    throw usage_error("killing_s3 index out of range");
}

inline AmbientVector killing_h3_value(int index, const AmbientVector& p) {
    const double x = p.x(), y = p.y(), z = p.z(), t = p.t();
    switch (index) {
        case 1: return AmbientVector::l4(-y, x, t, z);
        case 2: return AmbientVector::l4(y, -x, t, z);
        case 3: return AmbientVector::l4(-z, t, x, y);
        case 4: return AmbientVector::l4(z, t, -x, y);
        case 5: return AmbientVector::l4(t, -z, y, x);
        case 6: return AmbientVector::l4(t, z, -y, x);
    }
    throw usage_error("killing_h3 index out of range");
}

inline AmbientVector killing_r3_value(int index, const AmbientVector& p) {
    const double x = p.x(), y = p.y(), z = p.z();
    switch (index) {
        case 1: return AmbientVector::r3(1.0, 0.0, 0.0);
        case 2: return AmbientVector::r3(0.0, 1.0, 0.0);
        case 3: return AmbientVector::r3(0.0, 0.0, 1.0);
        case 4: return AmbientVector::r3(-y, x, 0.0);
        case 5: return AmbientVector::r3(-z, 0.0, x);
        case 6: return AmbientVector::r3(0.0, -z, y);
    }
    throw usage_error("killing_r3 index out of range");
}

/// Field value at p with no manifold check; every catalog formula extends
/// polynomially to all of the ambient space, which the integrator relies on
/// when evaluating Runge-Kutta stages slightly off the quadric.
inline AmbientVector eval_field(const FieldSpec& f, const AmbientVector& p) {
    switch (f.kind) {
        case FieldKind::radial_r3: return p;
        case FieldKind::special_conformal_r3:
            return (0.5 * inner(p, p)) * f.a - inner(f.a, p) * p;
        case FieldKind::conformal_s3: return f.a - inner(f.a, p) * p;
        case FieldKind::conformal_h3: return f.a + inner(f.a, p) * p;
        case FieldKind::killing_r3: return killing_r3_value(f.index, p);
        case FieldKind::killing_s3: return killing_s3_value(f.index, p);
        case FieldKind::killing_h3: return killing_h3_value(f.index, p);
    }
    throw usage_error("unknown field kind");
}

inline double eval_lambda(const FieldSpec& f, const AmbientVector& p) {
    switch (f.kind) {
        case FieldKind::radial_r3: return 2.0;
        case FieldKind::special_conformal_r3: return -2.0 * inner(f.a, p);
        case FieldKind::conformal_s3: return -2.0 * inner(f.a, p);
        case FieldKind::conformal_h3: return 2.0 * inner(f.a, p);
        case FieldKind::killing_r3:
        case FieldKind::killing_s3:
        case FieldKind::killing_h3: return 0.0;
    }
    throw usage_error("unknown field kind");
}

inline void require_on_manifold(const FieldSpec& f, const AmbientVector& p, double tol) {
    const SpaceForm form = f.form();
    require_form_signature(form, p, "field evaluation");
    if (form.kind == SpaceFormKind::euclidean) return;
    if (std::fabs(constraint_residual(form, p)) > tol) {
        throw manifold_error("field evaluation: point off the manifold beyond tolerance");
    }
}

}  // namespace detail

inline std::string FieldSpec::name() const {
    switch (kind) {
        case FieldKind::radial_r3: return "radial_r3";
        case FieldKind::special_conformal_r3: return "special_conformal_r3";
        case FieldKind::conformal_s3: return "conformal_s3";
        case FieldKind::conformal_h3: return "conformal_h3";
        case FieldKind::killing_r3: return "killing_r3_" + std::to_string(index);
        case FieldKind::killing_s3: return "killing_s3_" + std::to_string(index);
        case FieldKind::killing_h3: return "killing_h3_" + std::to_string(index);
    }
    return "?";
}

/// Ambient components of the field at p. Quadric fields return a vector
/// tangent at p; p must lie on the field's space form within tolerance.
inline AmbientVector evaluate(const FieldSpec& f, const AmbientVector& p,
                              double manifold_tol = 1e-6) {
    detail::require_on_manifold(f, p, manifold_tol);
    return detail::eval_field(f, p);
}

/// Conformal factor at p: L_V<,> = lambda <,>. Zero for Killing fields.
inline double lambda(const FieldSpec& f, const AmbientVector& p, double manifold_tol = 1e-6) {
    detail::require_on_manifold(f, p, manifold_tol);
    return detail::eval_lambda(f, p);
}

/// Central-difference covariant derivative of the field along tangent X at p:
/// the displaced points are projected back to the manifold and the sampled
/// field values tangent-projected at p before differencing, so the result
/// approximates the Levi-Civita derivative with O(h^2) error.
inline AmbientVector fd_covariant_derivative(const FieldSpec& f, const AmbientVector& p,
                                             const AmbientVector& x, double h) {
    if (!(h > 0.0)) throw usage_error("fd_covariant_derivative: step h must be positive");
    const SpaceForm form = f.form();
    const AmbientVector p_plus = project_point(form, p + h * x);
    const AmbientVector p_minus = project_point(form, p - h * x);
    const AmbientVector v_plus = project_tangent(form, p, detail::eval_field(f, p_plus));
    const AmbientVector v_minus = project_tangent(form, p, detail::eval_field(f, p_minus));
    return (v_plus - v_minus) / (2.0 * h);
}

/// Finite-difference defect of the conformal identity
/// <grad_X V, Y> + <X, grad_Y V> - lambda <X,Y> at p; O(h^2) for catalog
/// fields. X and Y must be tangent at p.
inline double conformality_residual(const FieldSpec& f, const AmbientVector& p,
                                    const AmbientVector& x, const AmbientVector& y, double h) {
    if (!(h > 0.0)) throw usage_error("conformality_residual: step h must be positive");
    detail::require_on_manifold(f, p, 1e-6);
    const AmbientVector dx = fd_covariant_derivative(f, p, x, h);
    const AmbientVector dy = fd_covariant_derivative(f, p, y, h);
    const double lam = detail::eval_lambda(f, p);
    return std::fabs(inner(dx, y) + inner(x, dy) - lam * inner(x, y));
}

/// A geodesic through p with unit tangent v is a conformal trajectory of the
/// field exactly when V(p) and v are collinear.
inline bool geodesic_trajectory_test(SpaceForm form, const AmbientVector& p,
                                     const AmbientVector& v, const FieldSpec& f) {
    if (form != f.form()) {
        throw usage_error("geodesic_trajectory_test: space form does not match field");
    }
    const AmbientVector value = evaluate(f, p);
    return is_collinear_at(form, p, value, v);
}

/// 4x4 generator matrix of a quadric Killing field (column j is the field at
/// the j-th coordinate axis). Exposed for the catalog and for checking
/// skew-symmetry against the ambient metric.
inline std::array<std::array<double, 4>, 4> killing_matrix(SpaceFormKind form, int index) {
    if (form == SpaceFormKind::euclidean) {
        throw usage_error("killing_matrix: defined for the quadric space forms only");
    }
    std::array<std::array<double, 4>, 4> m{};
    const Signature sig =
        form == SpaceFormKind::sphere ? Signature::euclidean4 : Signature::lorentz4;
    for (int j = 0; j < 4; ++j) {
        const AmbientVector column =
            form == SpaceFormKind::sphere
                ? detail::killing_s3_value(index, AmbientVector::axis(sig, j))
                : detail::killing_h3_value(index, AmbientVector::axis(sig, j));
        for (int i = 0; i < 4; ++i) {
            m[static_cast<unsigned>(i)][static_cast<unsigned>(j)] = column[i];
        }
    }
    return m;
}

struct CatalogEntry {
    std::string name;
    std::string space_form;
    std::string components;
    std::string lambda;
    bool parametrized;
};

/// Structured listing of every catalog field, with component and conformal
/// factor formulas as plain text.
inline std::vector<CatalogEntry> catalog() {
    std::vector<CatalogEntry> out;
    out.push_back({"radial_r3", "euclidean", "(x, y, z)", "2", false});
    out.push_back({"special_conformal_r3", "euclidean", "(|p|^2/2) a - <a,p> p", "-2<a,p>", true});
    const char* killing_r3_comp[6] = {"(1, 0, 0)",  "(0, 1, 0)",  "(0, 0, 1)",
                                      "(-y, x, 0)", "(-z, 0, x)", "(0, -z, y)"};
    for (int i = 0; i < 6; ++i) {
        out.push_back({"killing_r3_" + std::to_string(i + 1), "euclidean", killing_r3_comp[i],
                       "0", false});
    }
    out.push_back({"conformal_s3", "sphere", "a - <a,p> p", "-2<a,p>", true});
    const char* killing_s3_comp[6] = {"(-y, x, -t, z)", "(-y, x, t, -z)", "(-z, -t, x, y)",
                                      "(-z, t, x, -y)", "(-t, z, -y, x)", "(-t, -z, y, x)"};
    for (int i = 0; i < 6; ++i) {
        out.push_back({"killing_s3_" + std::to_string(i + 1), "sphere", killing_s3_comp[i], "0",
                       false});
    }
    out.push_back({"conformal_h3", "hyperbolic", "a + <a,p> p", "2<a,p>", true});
    const char* killing_h3_comp[6] = {"(-y, x, t, z)", "(y, -x, t, z)", "(-z, t, x, y)",
                                      "(z, t, -x, y)", "(t, -z, y, x)", "(t, z, -y, x)"};
    for (int i = 0; i < 6; ++i) {
        out.push_back({"killing_h3_" + std::to_string(i + 1), "hyperbolic", killing_h3_comp[i],
                       "0", false});
    }
    return out;
}

/// Builds a FieldSpec from its catalog name ("radial_r3", "killing_s3_4",
/// ...) and an optional parameter list for the parametrized kinds.
inline FieldSpec field_from_name(const std::string& kind, const std::vector<double>& a) {
    auto need = [&](std::size_t n, Signature sig) {
        if (a.size() != n) {
            throw usage_error("field '" + kind + "' expects " + std::to_string(n) +
                              " parameter components, got " + std::to_string(a.size()));
        }
        AmbientVector v = AmbientVector::zero(sig);
        for (std::size_t i = 0; i < n; ++i) v[static_cast<int>(i)] = a[i];
        return v;
    };
    auto no_param = [&]() {
        if (!a.empty()) {
            throw usage_error("field '" + kind + "' takes no parameter vector");
        }
    };
    if (kind == "radial_r3") {
        no_param();
        return FieldSpec::radial();
    }
    if (kind == "special_conformal_r3") {
        return FieldSpec::special_conformal(need(3, Signature::euclidean3));
    }
    if (kind == "conformal_s3") {
        return FieldSpec::conformal_sphere(need(4, Signature::euclidean4));
    }
    if (kind == "conformal_h3") {
        return FieldSpec::conformal_hyperbolic(need(4, Signature::lorentz4));
    }
    for (const char* prefix : {"killing_r3_", "killing_s3_", "killing_h3_"}) {
        if (kind.rfind(prefix, 0) == 0 && kind.size() == std::string(prefix).size() + 1) {
            const char digit = kind.back();
            if (digit < '1' || digit > '6') {
                throw usage_error("killing field index must be in 1..6: '" + kind + "'");
            }
            no_param();
            const SpaceFormKind form = prefix[8] == 'r'   ? SpaceFormKind::euclidean
                                       : prefix[8] == 's' ? SpaceFormKind::sphere
                                                          : SpaceFormKind::hyperbolic;
            return FieldSpec::killing(form, digit - '0');
        }
    }
    throw usage_error("unknown field kind '" + kind + "'");
}

}  // namespace ctraj
