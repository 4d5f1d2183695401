#include "chplane/ellip.hpp"

#include <cmath>
#include <numbers>

namespace chplane {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mod_two_pi(double x) {
    double y = std::fmod(x, kTwoPi);
    if (y < 0) y += kTwoPi;
    return y;
}

}  // namespace

bool EllipticAngles::regular(double tol) const {
    const double a = mod_two_pi(alpha), b = mod_two_pi(beta);
    return a > tol && b > tol && std::abs(a - b) > tol;
}

bool EllipticAngles::real_elliptic(double tol) const {
    return std::abs(mod_two_pi(alpha + beta)) < tol ||
           std::abs(mod_two_pi(alpha + beta) - kTwoPi) < tol;
}

Isometry elliptic_normal_form(const EllipticAngles& ang, FormKind model) {
    const Complex phase = std::polar(1.0, -(ang.alpha + ang.beta) / 3.0);
    Mat3 d = Mat3::Zero();
    d(0, 0) = std::polar(1.0, ang.alpha) * phase;
    d(1, 1) = std::polar(1.0, ang.beta) * phase;
    d(2, 2) = phase;
    if (model == FormKind::Ball) return Isometry(d, FormKind::Ball);
    const Mat3& c = cayley_matrix();
    return Isometry(c * d * c, FormKind::Siegel);
}

bool torus_membership(const ProjectivePoint& q, double tol) {
    if (q.form != FormKind::Siegel)
        throw std::invalid_argument("torus_membership: Siegel form required");
    if (std::abs(q.lift(2)) <= tol * q.lift.norm())
        throw std::domain_error("torus_membership: q_infinity rejected");
    const Complex z1 = q.lift(0) / q.lift(2);
    const Complex z2 = q.lift(1) / q.lift(2);
    return std::abs(std::norm(z1 + 1.0) - 2.0 * std::norm(z2)) <= tol * std::max(1.0, std::norm(z1));
}

ProjectivePoint circle_point(const ProjectivePoint& q, double theta) {
    if (q.form != FormKind::Siegel)
        throw std::invalid_argument("circle_point: Siegel form required");
    const Vec3 v = q.lift / q.lift(2);
    const Complex e = std::polar(1.0, theta);
    const Complex half_sum = (v(0) + 1.0) / 2.0 * e;
    const Complex half_diff = (v(0) - 1.0) / 2.0;
    return ProjectivePoint(
        Vec3(half_sum + half_diff, v(1) * std::polar(1.0, -theta), half_sum - half_diff),
        FormKind::Siegel);
}

ProjectivePoint circle_point(const TorusPoint& q, double theta) {
    return circle_point(ProjectivePoint::siegel(q.kappa1, q.kappa2), theta);
}

RealEllipticWitness real_elliptic_test(const Isometry& g, double tol) {
    const IsometryClass cls = classify_isometry(g, tol);
    if (cls.kind != IsometryKind::RegularElliptic)
        throw std::domain_error("real_elliptic_test: input is not regular elliptic");
    Eigen::ComplexEigenSolver<Mat3> es(g.m);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("real_elliptic_test: eigensolver failed");
    const Vec3 ev = es.eigenvalues();
    int i0 = -1;
    double most_negative = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Vec3 v = es.eigenvectors().col(i);
        const double n = hermitian_product(v, v, g.form).real();
        if (n < most_negative) { most_negative = n; i0 = i; }
    }
    RealEllipticWitness w;
    if (i0 < 0) return w;  // no negative eigenvector: not elliptic data
    const int ia = (i0 + 1) % 3, ib = (i0 + 2) % 3;
    const Complex lam0 = ev(i0);
    w.fixed_point = es.eigenvectors().col(i0);
    w.theta = std::abs(std::arg(ev(ia) / lam0));
    w.is_real_elliptic = std::abs(std::abs(lam0) - 1.0) < tol &&
                         std::abs(ev(ia) * ev(ib) - lam0 * lam0) < std::sqrt(tol);
    return w;
}

ProjectivePoint TorusSampler::operator()(double phi, double theta_leaf) const {
    const double s2 = std::sqrt(2.0);
    const ProjectivePoint base =
        ProjectivePoint::siegel(Complex(-(3.0 + 2.0 * s2)), (2.0 + s2) * std::polar(1.0, phi));
    return conjugator.apply(circle_point(base, theta_leaf));
}

TorusSampler fixed_torus_of(const Isometry& g, double tol) {
    if (g.form != FormKind::Siegel)
        throw std::invalid_argument("fixed_torus_of: Siegel form required");
    const RealEllipticWitness w = real_elliptic_test(g, tol);
    if (!w.is_real_elliptic)
        throw std::domain_error("fixed_torus_of: input is not real elliptic");
    Eigen::ComplexEigenSolver<Mat3> es(g.m);
    const Vec3 ev = es.eigenvalues();
    int i0 = -1;
    double most_negative = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Vec3 v = es.eigenvectors().col(i);
        const double n = hermitian_product(v, v, FormKind::Siegel).real();
        if (n < most_negative) { most_negative = n; i0 = i; }
    }
    const int ia = (i0 + 1) % 3, ib = (i0 + 2) % 3;
    if (std::abs(ev(ia) - ev(ib)) < std::sqrt(tol))
        throw std::domain_error("fixed_torus_of: degenerate eigenbasis");
    // Pair the positive eigenvectors with the e^{+i theta} / e^{-i theta} slots.
    const Complex lam0 = ev(i0);
    const int ip = std::abs(ev(ia) / lam0 - std::polar(1.0, w.theta)) <
                           std::abs(ev(ib) / lam0 - std::polar(1.0, w.theta))
                       ? ia
                       : ib;
    const int im = (ip == ia) ? ib : ia;
    Vec3 vp = es.eigenvectors().col(ip);
    Vec3 vm = es.eigenvectors().col(im);
    Vec3 v0 = es.eigenvectors().col(i0);
    const double np = hermitian_product(vp, vp, FormKind::Siegel).real();
    const double nm = hermitian_product(vm, vm, FormKind::Siegel).real();
    const double n0 = hermitian_product(v0, v0, FormKind::Siegel).real();
    if (!(np > 0.0 && nm > 0.0 && n0 < 0.0))
        throw std::domain_error("fixed_torus_of: eigenvector signature is not (+,+,-)");
    vp /= std::sqrt(np);
    vm /= std::sqrt(nm);
    v0 /= std::sqrt(-n0);
    Mat3 p;
    p.col(0) = vp;
    p.col(1) = vm;
    p.col(2) = v0;
    // det fix on an eigenvector column keeps the conjugation diagonal.
    const Complex d = (p * cayley_matrix()).determinant();
    p.col(0) *= std::conj(d);
    TorusSampler sampler{Isometry(p * cayley_matrix(), FormKind::Siegel), w.theta};
    return sampler;
}

HeisenbergPoint RCircleLine::at(double x) const {
    const Complex z = x * std::polar(1.0, theta0) + Complex(x0, y0);
    return {z, v0 + 2.0 * x * y0 * std::cos(theta0) - 2.0 * x * x0 * std::sin(theta0)};
}

Isometry torus_point_translation(const TorusPoint& q) {
    return heis_translation({-q.kappa2, -2.0 * q.kappa1.imag()});
}

Isometry h2_as_isometry() { return Isometry(HermitianForm::siegel().matrix(), FormKind::Siegel); }

RCircleLine rcircle_affine_params(const TorusPoint& q, double tol) {
    const double k2n = std::norm(q.kappa2);
    if (k2n <= tol)
        throw std::domain_error("rcircle_affine_params: degenerate C-circle leaf (kappa2 = 0)");
    RCircleLine line;
    line.Cz = q.kappa2 * (q.kappa1 + 3.0) * Complex(0, 1) / (4.0 * k2n);
    line.Ct = -(q.kappa1.real() + 1.0) / (2.0 * k2n);
    line.theta0 = std::arg(-line.Cz);
    const Complex zpi = q.kappa2 * (q.kappa1 - 1.0) / (-4.0 * k2n);
    line.x0 = zpi.real();
    line.y0 = zpi.imag();
    line.v0 = q.kappa1.imag() / (2.0 * k2n);
    return line;
}

double c_circle_on_sphere_check(double theta, int samples) {
    const Isometry e = elliptic_normal_form({theta, kTwoPi - theta}, FormKind::Siegel);
    const CyganSphere s = isometric_sphere(e);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double phi = kTwoPi * i / samples;
        const HoroPoint p{std::sqrt(2.0) * std::polar(1.0, phi), 0.0, 0.0};
        worst = std::max(worst,
                         std::abs(cygan_distance(p, HoroPoint{s.center.z, s.center.t, 0.0}) - s.radius));
    }
    return worst;
}

}  // namespace chplane
