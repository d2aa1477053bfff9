#include <doctest.h>

#include <cmath>

#include "ctraj/ambient.hpp"
#include "test_support.hpp"

using namespace ctraj;
using ctraj_test::Rng;

namespace {
const double sqrt2 = std::sqrt(2.0);
}

TEST_CASE("inner product by signature") {
    CHECK(inner(AmbientVector::l4(1, 0, 0, 0), AmbientVector::l4(1, 0, 0, 0)) == 1.0);
    CHECK(inner(AmbientVector::l4(0, 0, 0, 1), AmbientVector::l4(0, 0, 0, 1)) == -1.0);
    CHECK(inner(AmbientVector::l4(0, 0, 0, sqrt2), AmbientVector::l4(1, 0, 0, sqrt2)) ==
          doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(inner(AmbientVector::r4(0, 0, 0, 1), AmbientVector::r4(0, 0, 0, 1)) == 1.0);
    CHECK(inner(AmbientVector::r3(1, 2, 3), AmbientVector::r3(4, 5, 6)) == 32.0);
}

TEST_CASE("inner product rejects mismatched signatures") {
    CHECK_THROWS_AS(inner(AmbientVector::r4(1, 0, 0, 0), AmbientVector::l4(1, 0, 0, 0)),
                    signature_error);
    CHECK_THROWS_AS(AmbientVector::r3(1, 0, 0) + AmbientVector::r4(1, 0, 0, 0),
                    signature_error);
}

TEST_CASE("inner product is symmetric and bilinear on random input") {
    Rng rng(101);
    for (int it = 0; it < 50; ++it) {
        const auto u = ctraj_test::random_vector(rng, Signature::lorentz4);
        const auto v = ctraj_test::random_vector(rng, Signature::lorentz4);
        const auto w = ctraj_test::random_vector(rng, Signature::lorentz4);
        const double a = rng.uniform(-3.0, 3.0);
        CHECK(inner(u, v) == doctest::Approx(inner(v, u)).epsilon(1e-15));
        CHECK(inner(a * u + w, v) ==
              doctest::Approx(a * inner(u, v) + inner(w, v)).epsilon(1e-12));
    }
}

TEST_CASE("cross3 canonical cases") {
    const auto e1 = AmbientVector::r3(1, 0, 0);
    const auto e2 = AmbientVector::r3(0, 1, 0);
    const auto e3 = AmbientVector::r3(0, 0, 1);
    CHECK(component_norm(cross3(e1, e2) - e3) == 0.0);
    CHECK(component_norm(cross3(e1, e1)) == 0.0);

    const double r = 1.0 / sqrt2;
    const auto c = cross3(e1, AmbientVector::r3(0, r, r));
    CHECK(c.x() == doctest::Approx(0.0));
    CHECK(c.y() == doctest::Approx(-r).epsilon(1e-15));
    CHECK(c.z() == doctest::Approx(r).epsilon(1e-15));

    CHECK_THROWS_AS(cross3(AmbientVector::r4(1, 0, 0, 0), AmbientVector::r4(0, 1, 0, 0)),
                    signature_error);
}

TEST_CASE("cross3 Lagrange identity on random input") {
    Rng rng(202);
    for (int it = 0; it < 100; ++it) {
        const auto u = ctraj_test::random_vector(rng, Signature::euclidean3);
        const auto v = ctraj_test::random_vector(rng, Signature::euclidean3);
        const auto c = cross3(u, v);
        const double lhs = inner(c, c);
        const double rhs = inner(u, u) * inner(v, v) - inner(u, v) * inner(u, v);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        CHECK(std::fabs(inner(c, u)) < 1e-12 * (1.0 + component_norm_sq(u)));
    }
}

TEST_CASE("det4 matches permutation signs and column swaps") {
    const auto e = [](int i) { return AmbientVector::axis(Signature::euclidean4, i); };
    CHECK(det4(e(0), e(1), e(2), e(3)) == 1.0);
    CHECK(det4(e(1), e(0), e(2), e(3)) == -1.0);
    CHECK(det4(e(0), e(1), e(3), e(2)) == -1.0);
    CHECK(det4(e(3), e(0), e(1), e(2)) == -1.0);  // 4-cycle is odd

    Rng rng(303);
    for (int it = 0; it < 50; ++it) {
        const auto a = ctraj_test::random_vector(rng, Signature::euclidean4);
        const auto b = ctraj_test::random_vector(rng, Signature::euclidean4);
        const auto c = ctraj_test::random_vector(rng, Signature::euclidean4);
        const auto d = ctraj_test::random_vector(rng, Signature::euclidean4);
        CHECK(det4(a, b, c, d) == -det4(b, a, c, d));  // bit-exact by construction
        CHECK(det4(a, b, c, d) == doctest::Approx(-det4(a, c, b, d)).epsilon(1e-12));
        CHECK(det4(a, b, c, a) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("cross4 canonical determinant cases") {
    // Sphere: at p = e4 the tangent space is span{e1,e2,e3} and e1 x e2 = e3.
    const auto p_s = AmbientVector::r4(0, 0, 0, 1);
    const auto x_s = cross4(p_s, AmbientVector::r4(1, 0, 0, 0), AmbientVector::r4(0, 1, 0, 0));
    CHECK(component_norm(x_s - AmbientVector::r4(0, 0, 1, 0)) < 1e-15);

    // Hyperbolic basepoint: spacelike components are unaffected by the index raising.
    const auto p_h = AmbientVector::l4(0, 0, 0, 1);
    const auto x_h = cross4(p_h, AmbientVector::l4(1, 0, 0, 0), AmbientVector::l4(0, 1, 0, 0));
    CHECK(component_norm(x_h - AmbientVector::l4(0, 0, 1, 0)) < 1e-15);
}

TEST_CASE("cross4 rejects bad input") {
    const auto p = AmbientVector::r4(0, 0, 0, 1);
    CHECK_THROWS_AS(cross4(AmbientVector::r3(0, 0, 1), AmbientVector::r3(1, 0, 0),
                           AmbientVector::r3(0, 1, 0)),
                    signature_error);
    // p itself is not tangent at p.
    CHECK_THROWS_AS(cross4(p, p, AmbientVector::r4(1, 0, 0, 0)), tangency_error);
}

TEST_CASE("cross4 satisfies the defining triple-product relation") {
    Rng rng(404);
    for (ctraj::SpaceForm form : {SpaceForm::sphere(), SpaceForm::hyperbolic()}) {
        for (int it = 0; it < 40; ++it) {
            const auto p = ctraj_test::random_point(rng, form);
            const auto u = ctraj_test::random_tangent(rng, form, p);
            const auto v = ctraj_test::random_tangent(rng, form, p);
            const auto x = cross4(p, u, v);
            // <X, w> = det(u, v, w, p) for each basis tangent w.
            const auto basis = detail::tangent_basis(detail::unit_quadric_point(p));
            for (const auto& w : basis) {
                CHECK(inner(x, w) == doctest::Approx(det4(u, v, w, p)).epsilon(1e-12));
            }
            CHECK(std::fabs(inner(x, u)) < 1e-12);
            CHECK(std::fabs(inner(x, v)) < 1e-12);
            CHECK(std::fabs(inner(x, p)) < 1e-12);
            // Exact antisymmetry, component by component.
            const auto x_rev = cross4(p, v, u);
            for (int k = 0; k < 4; ++k) CHECK(x[k] == -x_rev[k]);
        }
    }
}

TEST_CASE("causal classification") {
    CHECK(causal_norm(AmbientVector::l4(0, 0, 0, 1)).cls == CausalClass::timelike);
    CHECK(causal_norm(AmbientVector::l4(0, 0, 0, 1)).magnitude == 1.0);
    CHECK(causal_norm(AmbientVector::l4(1, 0, 0, 0)).cls == CausalClass::spacelike);
    CHECK(causal_norm(AmbientVector::l4(1, 0, 0, 0)).magnitude == 1.0);
    CHECK(causal_norm(AmbientVector::l4(1, 0, 0, 1)).cls == CausalClass::lightlike);
    CHECK(causal_norm(AmbientVector::l4(1, 0, 0, 1)).magnitude == 0.0);
    // Scale-aware band.
    CHECK(causal_norm(AmbientVector::l4(1e8, 0, 0, 1e8 + 1e-9)).cls == CausalClass::lightlike);
}
