#include "chplane/heis.hpp"

#include <cmath>

namespace chplane {

HeisenbergPoint heis_mul(const HeisenbergPoint& p, const HeisenbergPoint& q) {
    return {p.z + q.z, p.t + q.t + 2.0 * (p.z * std::conj(q.z)).imag()};
}

HeisenbergPoint heis_inverse(const HeisenbergPoint& p) { return {-p.z, -p.t}; }

Vec3 horo_lift(const HoroPoint& p) {
    return Vec3(Complex(-std::norm(p.z) - p.u, p.t) / 2.0, p.z, Complex(1.0));
}

ProjectivePoint horo_point(const HoroPoint& p) {
    return ProjectivePoint(horo_lift(p), FormKind::Siegel);
}

HoroPoint horo_from_lift(const Vec3& lift, double tol) {
    if (std::abs(lift(2)) <= tol * lift.norm())
        throw std::domain_error("horo_from_lift: point is q_infinity");
    const Vec3 v = lift / lift(2);
    HoroPoint p;
    p.z = v(1);
    p.t = 2.0 * v(0).imag();
    p.u = -2.0 * v(0).real() - std::norm(p.z);
    if (p.u < 0.0) {
        if (p.u < -tol * std::max(1.0, v.squaredNorm()))
            throw std::domain_error("horo_from_lift: point outside the closed domain");
        p.u = 0.0;
    }
    return p;
}

Isometry heis_translation(const HeisenbergPoint& by) {
    Mat3 m = Mat3::Identity();
    m(0, 1) = -std::conj(by.z);
    m(0, 2) = Complex(-std::norm(by.z), by.t) / 2.0;
    m(1, 2) = by.z;
    return Isometry(m, FormKind::Siegel);
}

Isometry heis_rotation(double theta) {
    Mat3 m = Mat3::Identity();
    m(1, 1) = std::polar(1.0, theta);
    return Isometry(m, FormKind::Siegel);
}

Isometry heis_dilation(double lambda) {
    if (lambda == 0.0) throw std::invalid_argument("heis_dilation: lambda must be nonzero");
    Mat3 m = Mat3::Zero();
    m(0, 0) = lambda;
    m(1, 1) = 1.0;
    m(2, 2) = 1.0 / lambda;
    return Isometry(m, FormKind::Siegel);
}

HoroPoint horo_apply(const Isometry& g, const HoroPoint& p, double tol) {
    if (g.form != FormKind::Siegel) throw std::invalid_argument("horo_apply: Siegel form required");
    return horo_from_lift(g.m * horo_lift(p), tol);
}

double cygan_distance(const HoroPoint& p, const HoroPoint& q) {
    const Complex dz = p.z - q.z;
    const Complex val(std::norm(dz) + std::abs(p.u - q.u),
                      -(p.t - q.t + 2.0 * (p.z * std::conj(q.z)).imag()));
    return std::sqrt(std::abs(val));
}

double cygan_distance(const HeisenbergPoint& p, const HeisenbergPoint& q) {
    return cygan_distance(HoroPoint{p.z, p.t, 0.0}, HoroPoint{q.z, q.t, 0.0});
}

double pullback_cygan_distance(const ProjectivePoint& omega,
                               const ProjectivePoint& omega_prime,
                               const ProjectivePoint& q_ball, double tol) {
    if (omega.form != FormKind::Ball || omega_prime.form != FormKind::Ball ||
        q_ball.form != FormKind::Ball)
        throw std::invalid_argument("pullback_cygan_distance: ball-model points required");
    // (kappa1, kappa2) of the Siegel image of q_ball.
    const ProjectivePoint q = cayley_transform(q_ball);
    if (std::abs(q.lift(2)) <= tol * q.lift.norm())
        throw std::domain_error("pullback_cygan_distance: q_ball maps to q_infinity");
    const Complex k1 = q.lift(0) / q.lift(2);
    const Complex k2 = q.lift(1) / q.lift(2);
    const auto denom = [&](const Vec3& lift) {
        const Vec3 v = lift / lift(2);
        return v(0) + 1.0 + std::sqrt(2.0) * std::conj(k2) * v(1) + std::conj(k1) * (v(0) - 1.0);
    };
    const Complex d1 = denom(omega.lift);
    const Complex d2 = denom(omega_prime.lift);
    if (std::abs(d1) <= tol || std::abs(d2) <= tol)
        throw std::domain_error("pullback_cygan_distance: argument equals q_ball");
    const Complex num =
        4.0 * hermitian_product(omega.normalized_lift(), omega_prime.normalized_lift(), FormKind::Ball);
    return std::sqrt(std::abs(num / (d1 * std::conj(d2))));
}

CyganSphere isometric_sphere(const Isometry& g, double tol) {
    if (g.form != FormKind::Siegel)
        throw std::invalid_argument("isometric_sphere: Siegel form required");
    const Complex g31 = g.m(2, 0);
    if (std::abs(g31) <= tol)
        throw stabilizer_error("isometric_sphere: g fixes q_infinity");
    CyganSphere s;
    s.center.z = std::conj(g.m(2, 1)) / std::conj(g31);
    s.center.t = 2.0 * (std::conj(g.m(2, 2)) / std::conj(g31)).imag();
    s.radius = std::sqrt(2.0 / std::abs(g31));
    return s;
}

double sphere_side_residual(const Isometry& g, const ProjectivePoint& p) {
    if (g.form != FormKind::Siegel || p.form != FormKind::Siegel)
        throw std::invalid_argument("sphere_side: Siegel form required");
    const Vec3 qinf(Complex(1.0), Complex(0.0), Complex(0.0));
    const Vec3 c = g.inverse().m * qinf;
    // Normalize once so both pairings refer to the same lift of p.
    const Vec3 lift = p.normalized_lift();
    return std::abs(hermitian_product(lift, c, FormKind::Siegel)) -
           std::abs(hermitian_product(lift, qinf, FormKind::Siegel));
}

SphereSide sphere_side(const Isometry& g, const ProjectivePoint& p, double tol) {
    const double r = sphere_side_residual(g, p);
    const double scale = std::max(1.0, p.normalized_lift().squaredNorm());
    if (std::abs(r) <= tol * scale) return SphereSide::On;
    // |<p,q_inf>| > |<p,g^{-1} q_inf>| is the interior I_-.
    return r < 0.0 ? SphereSide::Inside : SphereSide::Outside;
}

ProjectivePoint geographic_point(const GeoCoord& gc, double tol) {
    return horo_point(geographic_horo(gc, tol));
}

HoroPoint geographic_horo(const GeoCoord& gc, double tol) {
    const double ca = std::cos(gc.alpha);
    if (gc.omega * gc.omega > ca + tol)
        throw std::invalid_argument("geographic: |omega| exceeds sqrt(cos alpha)");
    HoroPoint p;
    p.z = gc.r * gc.omega * std::polar(1.0, -gc.alpha / 2.0 + gc.beta);
    p.t = gc.r * gc.r * std::sin(gc.alpha);
    p.u = std::max(0.0, gc.r * gc.r * (ca - gc.omega * gc.omega));
    return p;
}

}  // namespace chplane
