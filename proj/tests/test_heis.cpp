#include <random>

#include "chplane/ellip.hpp"
#include "chplane/heis.hpp"
#include "chplane/trigroup.hpp"
#include "doctest.h"

using namespace chplane;

namespace {

const Complex I(0.0, 1.0);

HeisenbergPoint random_heis(std::mt19937& rng, double scale = 2.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {Complex(u(rng), u(rng)), u(rng)};
}

HoroPoint random_horo(std::mt19937& rng, double scale = 2.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {Complex(u(rng), u(rng)), u(rng), std::abs(u(rng))};
}

}  // namespace

TEST_CASE("heisenberg group law") {
    const HeisenbergPoint id{0.0, 0.0};
    const HeisenbergPoint p{Complex(0.3, -0.7), 1.1};
    CHECK(heis_mul(id, p).z == p.z);
    CHECK(heis_mul(id, p).t == p.t);

    // [1,0]*[i,0] = [1+i, -2]: 2 Im(1 * conj(i)) = -2
    const HeisenbergPoint r = heis_mul({1.0, 0.0}, {I, 0.0});
    CHECK(std::abs(r.z - Complex(1, 1)) < 1e-15);
    CHECK(r.t == doctest::Approx(-2.0));

    const HeisenbergPoint q = heis_mul(p, heis_inverse(p));
    CHECK(std::abs(q.z) < 1e-15);
    CHECK(std::abs(q.t) < 1e-15);
}

TEST_CASE("stabilizer isometries and their boundary action") {
    const Isometry t0 = heis_translation({0.0, 0.0});
    CHECK((t0.m - Mat3::Identity()).norm() < 1e-15);

    const HeisenbergPoint by{Complex(0.4, 1.2), -0.8};
    const HoroPoint origin{0.0, 0.0, 0.0};
    const HoroPoint moved = horo_apply(heis_translation(by), origin);
    CHECK(std::abs(moved.z - by.z) < 1e-12);
    CHECK(moved.t == doctest::Approx(by.t).epsilon(1e-12));
    CHECK(moved.u == doctest::Approx(0.0));

    // D_lambda: [zeta, nu, u] -> [lambda zeta, lambda^2 nu, lambda^2 u]
    const HoroPoint d = horo_apply(heis_dilation(2.0), HoroPoint{1.0, 1.0, 1.0});
    CHECK(std::abs(d.z - 2.0) < 1e-12);
    CHECK(d.t == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(d.u == doctest::Approx(4.0).epsilon(1e-12));

    const HoroPoint r = horo_apply(heis_rotation(0.7), HoroPoint{Complex(1, 1), 0.5, 0.25});
    CHECK(std::abs(r.z - Complex(1, 1) * std::polar(1.0, 0.7)) < 1e-12);
    CHECK(r.t == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.u == doctest::Approx(0.25).epsilon(1e-12));

    // the translation action matches the group law on boundary points
    std::mt19937 rng(2);
    for (int i = 0; i < 100; ++i) {
        const HeisenbergPoint a = random_heis(rng), b = random_heis(rng);
        const HoroPoint via_matrix = horo_apply(heis_translation(a), HoroPoint{b.z, b.t, 0.0});
        const HeisenbergPoint via_law = heis_mul(a, b);
        CHECK(std::abs(via_matrix.z - via_law.z) < 1e-12);
        CHECK(via_matrix.t == doctest::Approx(via_law.t).epsilon(1e-12));
    }

    CHECK_THROWS_AS(heis_dilation(0.0), std::invalid_argument);
}

TEST_CASE("cygan distance basics") {
    const HoroPoint p{Complex(0.2, 0.4), 0.7, 0.1};
    CHECK(cygan_distance(p, p) == 0.0);
    CHECK(cygan_distance(HoroPoint{0, 0, 0}, HoroPoint{1, 0, 0}) == doctest::Approx(1.0));
    CHECK(cygan_distance(HoroPoint{0, 0, 0}, HoroPoint{0, 4, 0}) == doctest::Approx(2.0));
}

TEST_CASE("cygan invariance and scaling") {
    std::mt19937 rng(4);
    for (int i = 0; i < 1000; ++i) {
        const HoroPoint p = random_horo(rng), q = random_horo(rng);
        const HeisenbergPoint a = random_heis(rng);
        const Isometry tr = heis_translation(a);
        const double d = cygan_distance(p, q);
        CHECK(cygan_distance(horo_apply(tr, p), horo_apply(tr, q)) ==
              doctest::Approx(d).epsilon(1e-12));
        const double lam = 0.25 + std::abs(a.t);
        const Isometry dil = heis_dilation(lam);
        CHECK(cygan_distance(horo_apply(dil, p), horo_apply(dil, q)) ==
              doctest::Approx(lam * d).epsilon(1e-12));
    }
}

TEST_CASE("extended metric equals the hermitian pairing when uv = 0") {
    std::mt19937 rng(6);
    for (int i = 0; i < 1000; ++i) {
        HoroPoint p = random_horo(rng);
        HoroPoint q = random_horo(rng);
        q.u = 0.0;
        const double lhs = cygan_distance(p, q);
        const double rhs = std::sqrt(
            std::abs(2.0 * hermitian_product(horo_lift(p), horo_lift(q), FormKind::Siegel)));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

namespace {

// composite route: push both ball points through H2 T Cayley and measure d_Cyg
double pullback_via_composite(const ProjectivePoint& w1, const ProjectivePoint& w2,
                              const ProjectivePoint& qball) {
    const ProjectivePoint q = cayley_transform(qball);
    const Complex k1 = q.lift(0) / q.lift(2);
    const Complex k2 = q.lift(1) / q.lift(2);
    const Isometry m = h2_as_isometry() * heis_translation({-k2, -2.0 * k1.imag()});
    const HoroPoint a = horo_from_lift(m.m * cayley_matrix() * w1.normalized_lift(), 1e-7);
    const HoroPoint b = horo_from_lift(m.m * cayley_matrix() * w2.normalized_lift(), 1e-7);
    return cygan_distance(a, b);
}

ProjectivePoint random_ball_boundary(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    const double a = 0.5 * u(rng) / 2.0;
    return ProjectivePoint::ball(std::cos(a) * std::polar(1.0, u(rng)),
                                 std::sin(a) * std::polar(1.0, u(rng)));
}

}  // namespace

TEST_CASE("pullback cygan metric") {
    const ProjectivePoint qball(Vec3(Complex(1, 1), -Complex(1, -1), Complex(2)), FormKind::Ball);

    std::mt19937 rng(8);
    const ProjectivePoint w = random_ball_boundary(rng);
    CHECK(pullback_cygan_distance(w, w, qball) == doctest::Approx(0.0));

    for (int i = 0; i < 20; ++i) {
        const ProjectivePoint a = random_ball_boundary(rng);
        const ProjectivePoint b = random_ball_boundary(rng);
        const double direct = pullback_cygan_distance(a, b, qball);
        const double composite = pullback_via_composite(a, b, qball);
        CHECK(direct == doctest::Approx(composite).epsilon(1e-12));
    }

    // interior origin against the Cayley preimage of a far Siegel boundary point
    const ProjectivePoint far = cayley_transform(ProjectivePoint::siegel(Complex(-8.0, 3.0), 4.0));
    const ProjectivePoint o = ProjectivePoint::ball(0, 0);
    CHECK(pullback_cygan_distance(o, far, qball) ==
          doctest::Approx(pullback_via_composite(o, far, qball)).epsilon(1e-12));

    CHECK_THROWS_AS(pullback_cygan_distance(o, qball, qball), std::domain_error);
}

TEST_CASE("isometric spheres") {
    // B at n=3, t=1 has radius 2/sqrt(5)
    const TriangleParams p = params_from_t(3, 1.0);
    const TriangleGenerators g = generators(p);
    const CyganSphere sb = isometric_sphere(g.b);
    CHECK(sb.radius == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-12));

    // the fixed point of an elliptic g with g(q_inf) != q_inf lies on I(g)
    const double th = 1.1;
    const Isometry e = elliptic_normal_form({th, 2.0 * M_PI - th}, FormKind::Siegel);
    const CyganSphere se = isometric_sphere(e);
    const HoroPoint pe{0.0, 0.0, 2.0};  // p_E = [-1,0,1] in horospherical coordinates
    CHECK(cygan_distance(pe, HoroPoint{se.center.z, se.center.t, 0.0}) ==
          doctest::Approx(se.radius).epsilon(1e-12));
    CHECK(sphere_side(e, ProjectivePoint::siegel(-1, 0)) == SphereSide::On);

    // radius of E~_{-th,th,q} is 1/(sqrt 2 |kappa2| sin(th/2))
    const TorusPoint q{Complex(-1, -2), std::sqrt(2.0)};
    const Isometry m = h2_as_isometry() * torus_point_translation(q);
    const Isometry etilde = m * e * m.inverse();
    CHECK(isometric_sphere(etilde).radius ==
          doctest::Approx(1.0 / (std::sqrt(2.0) * std::abs(q.kappa2) * std::sin(th / 2)))
              .epsilon(1e-12));

    CHECK_THROWS_AS(isometric_sphere(heis_translation({1.0, 0.5})), stabilizer_error);
}

TEST_CASE("sphere side agrees with the center-radius test") {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const TriangleParams tp = params_from_t(3, 1.0);
    for (int i = 0; i < 200; ++i) {
        const int j = 1 + (i % 2);
        const Isometry g = word_isometry(tp, j, i % 3);
        const CyganSphere s = isometric_sphere(g);
        const HeisenbergPoint b = random_heis(rng, 3.0);
        const double d = cygan_distance(b, s.center);
        const double res = sphere_side_residual(g, horo_point(HoroPoint{b.z, b.t, 0.0}));
        if (std::abs(d - s.radius) < 1e-9) continue;
        CHECK((d < s.radius) == (res < 0.0));
    }
}

TEST_CASE("geographic coordinates") {
    const GeoCoord gc{0.0, 0.0, 1.0, 1.0};
    const ProjectivePoint p = geographic_point(gc);
    CHECK((p.lift - Vec3(Complex(-0.5), Complex(1.0), Complex(1.0))).norm() < 1e-15);
    const HoroPoint h = geographic_horo(gc);
    CHECK(cygan_distance(h, HoroPoint{0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.u == doctest::Approx(0.0));

    // alpha = pi/2 collapses omega; lift is (-r^2 e^{-i pi/2}/2, 0, 1)
    const double r = 1.7;
    const GeoCoord polar{M_PI / 2, 0.3, 0.0, r};
    const ProjectivePoint pp = geographic_point(polar);
    CHECK(std::abs(pp.lift(0) - (-r * r * std::polar(1.0, -M_PI / 2) / 2.0)) < 1e-12);
    CHECK(std::abs(pp.lift(1)) < 1e-12);

    // u = r^2 (cos alpha - omega^2) >= 0 always
    std::mt19937 rng(14);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        GeoCoord g;
        g.alpha = u(rng) * M_PI / 2;
        g.beta = std::abs(u(rng)) * M_PI;
        g.omega = u(rng) * std::sqrt(std::cos(g.alpha));
        g.r = 0.5 + std::abs(u(rng));
        const HoroPoint hp = geographic_horo(g);
        CHECK(hp.u >= 0.0);
        CHECK(hp.u == doctest::Approx(g.r * g.r * (std::cos(g.alpha) - g.omega * g.omega))
                          .epsilon(1e-12));
        CHECK(cygan_distance(hp, HoroPoint{0, 0, 0}) == doctest::Approx(g.r).epsilon(1e-12));
    }

    CHECK_THROWS_AS(geographic_point(GeoCoord{1.5, 0.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("translated cygan spheres are translated pointwise") {
    // S_{[z0,t0]}(r) = T_{[z0,t0]}(S_{[0,0]}(r)) on geographic samples
    const HeisenbergPoint c{Complex(0.8, -0.3), 1.9};
    const Isometry tr = heis_translation(c);
    std::mt19937 rng(15);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        GeoCoord g;
        g.alpha = u(rng) * M_PI / 2;
        g.beta = std::abs(u(rng)) * M_PI;
        g.omega = u(rng) * std::sqrt(std::cos(g.alpha));
        g.r = 1.3;
        const HoroPoint moved = horo_apply(tr, geographic_horo(g));
        CHECK(cygan_distance(moved, HoroPoint{c.z, c.t, 0.0}) ==
              doctest::Approx(g.r).epsilon(1e-12));
    }
}
