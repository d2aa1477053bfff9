#include <doctest.h>

#include <cmath>
#include <vector>

#include "ctraj/circle_fit.hpp"
#include "ctraj/integrator.hpp"
#include "ctraj/projections.hpp"
#include "test_support.hpp"

using namespace ctraj;
using ctraj_test::Rng;

namespace {
const double sqrt2 = std::sqrt(2.0);
}

TEST_CASE("stereographic projection of S^3") {
    CHECK(stereographic_s3(AmbientVector::r4(0, 0, 0, -1)) == PlotPoint{0, 0, 0});
    CHECK(stereographic_s3(AmbientVector::r4(1, 0, 0, 0)) == PlotPoint{1, 0, 0});

    const double r = 1.0 / sqrt2;
    const PlotPoint p = stereographic_s3(AmbientVector::r4(0, r, 0, r));
    CHECK(p[0] == doctest::Approx(0.0));
    CHECK(p[1] == doctest::Approx(1.0 + sqrt2).epsilon(1e-14));
    CHECK(p[2] == doctest::Approx(0.0));

    // Near-pole input is refused.
    CHECK_THROWS_AS(stereographic_s3(AmbientVector::r4(0, 0, 1e-4, std::sqrt(1 - 1e-8))),
                    projection_singular_error);
    // Pole must be a canonical axis point.
    CHECK_THROWS_AS(stereographic_s3(AmbientVector::r4(1, 0, 0, 0),
                                     AmbientVector::r4(0.5, 0.5, 0.5, 0.5)),
                    usage_error);

    // A non-default pole: projecting from -e4 measures from the other side.
    const PlotPoint q =
        stereographic_s3(AmbientVector::r4(0, r, 0, r), AmbientVector::r4(0, 0, 0, -1));
    CHECK(q[1] == doctest::Approx(r / (1 + r)).epsilon(1e-14));

    // Pole on another axis permutes coordinates: from +e2.
    const PlotPoint w =
        stereographic_s3(AmbientVector::r4(0.6, 0, 0.8, 0), AmbientVector::r4(0, 1, 0, 0));
    CHECK(w[0] == doctest::Approx(0.6));
    CHECK(w[1] == doctest::Approx(0.8));
    CHECK(w[2] == doctest::Approx(0.0));
}

TEST_CASE("poincare ball model") {
    CHECK(poincare_ball(AmbientVector::l4(0, 0, 0, 1)) == PlotPoint{0, 0, 0});

    const PlotPoint p = poincare_ball(AmbientVector::l4(std::sinh(1.0), 0, 0, std::cosh(1.0)));
    CHECK(p[0] == doctest::Approx(std::tanh(0.5)).epsilon(1e-14));
    CHECK(p[1] == 0.0);
    CHECK(p[2] == 0.0);

    // Geodesics through the basepoint map to diameter segments.
    const double c1 = 0.6, c2 = 0.8;
    for (double s : {0.2, 0.7, 1.5}) {
        const auto g =
            AmbientVector::l4(c1 * std::sinh(s), c2 * std::sinh(s), 0, std::cosh(s));
        const PlotPoint b = poincare_ball(g);
        CHECK(b[0] * c2 == doctest::Approx(b[1] * c1).epsilon(1e-13));
    }

    // Image norm < 1 on random points.
    Rng rng(1616);
    for (int it = 0; it < 50; ++it) {
        const auto p_h = ctraj_test::random_point(rng, SpaceForm::hyperbolic());
        const PlotPoint b = poincare_ball(p_h);
        CHECK(b[0] * b[0] + b[1] * b[1] + b[2] * b[2] < 1.0);
    }

    CHECK_THROWS_AS(poincare_ball(AmbientVector::l4(0, 0, 0, 2)), manifold_error);
}

TEST_CASE("upper half-space model") {
    CHECK(upper_half_space(AmbientVector::l4(0, 0, 0, 1)) == PlotPoint{0, 0, 1});

    // The x-axis geodesic maps to the unit semicircle (tanh s, 0, sech s).
    for (double s : {-1.5, -0.3, 0.4, 2.0}) {
        const auto g = AmbientVector::l4(std::sinh(s), 0, 0, std::cosh(s));
        const PlotPoint u = upper_half_space(g);
        CHECK(u[0] == doctest::Approx(std::tanh(s)).epsilon(1e-14));
        CHECK(u[2] == doctest::Approx(1.0 / std::cosh(s)).epsilon(1e-14));
        CHECK(u[0] * u[0] + u[2] * u[2] == doctest::Approx(1.0).epsilon(1e-14));
    }

    // The z-axis geodesic maps to the vertical ray (0, 0, e^{-s}).
    for (double s : {-1.0, 0.5, 2.5}) {
        const auto g = AmbientVector::l4(0, 0, std::sinh(s), std::cosh(s));
        const PlotPoint u = upper_half_space(g);
        CHECK(u[0] == 0.0);
        CHECK(u[1] == 0.0);
        CHECK(u[2] == doctest::Approx(std::exp(-s)).epsilon(1e-13));
    }
}

TEST_CASE("circle fit recovers synthetic circles") {
    std::vector<std::array<double, 3>> pts;
    const double radius = 1.7;
    for (int k = 0; k < 40; ++k) {
        const double a = 0.157 * k;
        // Circle in a tilted plane through (1, 2, 3).
        pts.push_back({1.0 + radius * std::cos(a), 2.0 + radius * std::sin(a) * 0.6,
                       3.0 + radius * std::sin(a) * 0.8});
    }
    const CircleFit fit = fit_circle(pts);
    CHECK(fit.radius == doctest::Approx(radius).epsilon(1e-12));
    CHECK(fit.center[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.center[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.center[2] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.max_residual < 1e-12);
}

TEST_CASE("half-space image of an integrated geodesic is a unit semicircle") {
    Scenario sc;
    sc.form = SpaceForm::hyperbolic();
    sc.field = FieldSpec::conformal_hyperbolic(AmbientVector::l4(1, 0, 0, 0));
    sc.q = 0.0;  // geodesic mode; start along the field direction
    sc.initial_position = AmbientVector::l4(0, 0, 0, 1);
    sc.initial_velocity = AmbientVector::l4(1, 0, 0, 0);
    sc.s_max = 2.0;
    sc.step = 1e-3;
    sc.sample_stride = 10;
    const Trajectory traj = integrate(sc);

    std::vector<std::array<double, 3>> pts;
    for (const auto& sample : traj.samples) {
        pts.push_back(upper_half_space(sample.state.position));
    }
    const CircleFit fit = fit_circle(pts);
    CHECK(fit.max_residual <= 1e-9);
    CHECK(fit.radius == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("stereographic image of the S^3 circle run is a circle") {
    Scenario sc;
    sc.form = SpaceForm::sphere();
    sc.field = FieldSpec::conformal_sphere(AmbientVector::r4(0, 0, 0, 1));
    sc.q = -4.0 / 3.0;
    sc.initial_position = AmbientVector::r4(-0.6, 0, 0.8, 0);
    sc.initial_velocity = AmbientVector::r4(0, -1, 0, 0);
    sc.s_max = 2.0 * 3.141592653589793 * 0.6;
    sc.step = 1e-3;
    sc.sample_stride = 10;
    const Trajectory traj = integrate(sc);

    std::vector<std::array<double, 3>> pts;
    for (const auto& sample : traj.samples) {
        pts.push_back(stereographic_s3(sample.state.position));
    }
    const CircleFit fit = fit_circle(pts);
    CHECK(fit.max_residual <= 1e-8);
    CHECK(fit.radius == doctest::Approx(0.6).epsilon(1e-8));
}
