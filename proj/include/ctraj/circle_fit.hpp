#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "ctraj/errors.hpp"

namespace ctraj {

/// Best-fit circle through a cloud of 3-d points: plane through the centroid
/// (normal = smallest-variance direction), then an algebraic circle fit in
/// that plane. Used to validate the chart maps, which are expected to send
/// model circles and geodesics to Euclidean circles.
struct CircleFit {
    std::array<double, 3> center{};
    std::array<double, 3> normal{};
    double radius{0.0};
    /// max over points of |distance to plane| and ||p - center| - radius|.
    double max_residual{0.0};
};

namespace detail {

using Vec3 = std::array<double, 3>;

inline Vec3 sub(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline double dot3(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// Eigenvectors of a symmetric 3x3 matrix by cyclic Jacobi rotations.
/// Columns of `vecs` come out as the eigenvectors, `vals` the eigenvalues.
inline void jacobi_eigen3(std::array<std::array<double, 3>, 3> m,
                          std::array<double, 3>& vals,
                          std::array<std::array<double, 3>, 3>& vecs) {
    vecs = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::fabs(m[0][1]) + std::fabs(m[0][2]) + std::fabs(m[1][2]);
        if (off < 1e-300) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                const auto up = static_cast<unsigned>(p);
                const auto uq = static_cast<unsigned>(q);
                if (std::fabs(m[up][uq]) < 1e-300) continue;
                const double theta = (m[uq][uq] - m[up][up]) / (2.0 * m[up][uq]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const auto uk = static_cast<unsigned>(k);
                    const double mkp = m[uk][up], mkq = m[uk][uq];
                    m[uk][up] = c * mkp - s * mkq;
                    m[uk][uq] = s * mkp + c * mkq;
                }
                for (int k = 0; k < 3; ++k) {
                    const auto uk = static_cast<unsigned>(k);
                    const double mpk = m[up][uk], mqk = m[uq][uk];
                    m[up][uk] = c * mpk - s * mqk;
                    m[uq][uk] = s * mpk + c * mqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const auto uk = static_cast<unsigned>(k);
                    const double vkp = vecs[uk][up], vkq = vecs[uk][uq];
                    vecs[uk][up] = c * vkp - s * vkq;
                    vecs[uk][uq] = s * vkp + c * vkq;
                }
            }
        }
    }
    vals = {m[0][0], m[1][1], m[2][2]};
}

}  // namespace detail

inline CircleFit fit_circle(const std::vector<std::array<double, 3>>& points) {
    const std::size_t n = points.size();
    if (n < 4) throw usage_error("fit_circle: need at least 4 points");

    detail::Vec3 centroid{0, 0, 0};
    for (const auto& p : points) {
        for (int i = 0; i < 3; ++i) centroid[static_cast<unsigned>(i)] += p[static_cast<unsigned>(i)];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);

    std::array<std::array<double, 3>, 3> cov{};
    for (const auto& p : points) {
        const detail::Vec3 d = detail::sub(p, centroid);
        for (unsigned i = 0; i < 3; ++i) {
            for (unsigned j = 0; j < 3; ++j) cov[i][j] += d[i] * d[j];
        }
    }
    std::array<double, 3> vals{};
    std::array<std::array<double, 3>, 3> vecs{};
    detail::jacobi_eigen3(cov, vals, vecs);

    unsigned i_min = 0, i_a = 1, i_b = 2;
    if (vals[1] < vals[i_min]) i_min = 1;
    if (vals[2] < vals[i_min]) i_min = 2;
    i_a = (i_min + 1) % 3;
    i_b = (i_min + 2) % 3;

    const detail::Vec3 nrm = {vecs[0][i_min], vecs[1][i_min], vecs[2][i_min]};
    const detail::Vec3 ea = {vecs[0][i_a], vecs[1][i_a], vecs[2][i_a]};
    const detail::Vec3 eb = {vecs[0][i_b], vecs[1][i_b], vecs[2][i_b]};

    // Kasa fit in plane coordinates: u^2 + v^2 = 2 u u0 + 2 v v0 + k.
    double suu = 0, suv = 0, svv = 0, su = 0, sv = 0, s1 = 0;
    double bu = 0, bv = 0, b1 = 0;
    for (const auto& p : points) {
        const detail::Vec3 d = detail::sub(p, centroid);
        const double u = detail::dot3(d, ea);
        const double v = detail::dot3(d, eb);
        const double r2 = u * u + v * v;
        suu += 4 * u * u;
        suv += 4 * u * v;
        svv += 4 * v * v;
        su += 2 * u;
        sv += 2 * v;
        s1 += 1;
        bu += 2 * u * r2;
        bv += 2 * v * r2;
        b1 += r2;
    }
    // Solve the 3x3 normal equations by Cramer's rule.
    const double a11 = suu, a12 = suv, a13 = su;
    const double a21 = suv, a22 = svv, a23 = sv;
    const double a31 = su, a32 = sv, a33 = s1;
    const double det = a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
                       a13 * (a21 * a32 - a22 * a31);
    if (std::fabs(det) < 1e-12) {
        throw usage_error("fit_circle: degenerate point configuration");
    }
    const double u0 = (bu * (a22 * a33 - a23 * a32) - a12 * (bv * a33 - a23 * b1) +
                       a13 * (bv * a32 - a22 * b1)) /
                      det;
    const double v0 = (a11 * (bv * a33 - a23 * b1) - bu * (a21 * a33 - a23 * a31) +
                       a13 * (a21 * b1 - bv * a31)) /
                      det;
    const double kk = (a11 * (a22 * b1 - bv * a32) - a12 * (a21 * b1 - bv * a31) +
                       bu * (a21 * a32 - a22 * a31)) /
                      det;
    const double radius = std::sqrt(std::max(kk + u0 * u0 + v0 * v0, 0.0));

    CircleFit fit;
    fit.radius = radius;
    fit.normal = nrm;
    for (unsigned i = 0; i < 3; ++i) {
        fit.center[i] = centroid[i] + u0 * ea[i] + v0 * eb[i];
    }
    double worst = 0.0;
    for (const auto& p : points) {
        const detail::Vec3 d = detail::sub(p, centroid);
        const double u = detail::dot3(d, ea) - u0;
        const double v = detail::dot3(d, eb) - v0;
        const double w = detail::dot3(d, nrm);
        worst = std::max(worst, std::fabs(w));
        worst = std::max(worst, std::fabs(std::sqrt(u * u + v * v) - radius));
    }
    fit.max_residual = worst;
    return fit;
}

}  // namespace ctraj
