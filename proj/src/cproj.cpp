#include "chplane/cproj.hpp"

#include <cmath>

namespace chplane {

namespace {

Mat3 make_h1() {
    Mat3 h = Mat3::Zero();
    h(0, 0) = 1.0;
    h(1, 1) = 1.0;
    h(2, 2) = -1.0;
    return h;
}

Mat3 make_h2() {
    Mat3 h = Mat3::Zero();
    h(0, 2) = 1.0;
    h(1, 1) = 1.0;
    h(2, 0) = 1.0;
    return h;
}

Mat3 make_cayley() {
    const double s = 1.0 / std::sqrt(2.0);
    Mat3 c = Mat3::Zero();
    c(0, 0) = s;
    c(0, 2) = s;
    c(1, 1) = 1.0;
    c(2, 0) = s;
    c(2, 2) = -s;
    return c;
}

const Mat3& form_matrix(FormKind kind) {
    static const Mat3 h1 = make_h1();
    static const Mat3 h2 = make_h2();
    return kind == FormKind::Ball ? h1 : h2;
}

Complex principal_cbrt(Complex z) { return std::exp(std::log(z) / 3.0); }

}  // namespace

const Mat3& HermitianForm::matrix() const { return form_matrix(kind); }

Complex hermitian_product(const Vec3& u, const Vec3& v, FormKind form) {
    return v.dot(form_matrix(form) * u);  // Eigen's dot conjugates its callee
}

const Mat3& cayley_matrix() {
    static const Mat3 c = make_cayley();
    return c;
}

ProjectivePoint::ProjectivePoint(Vec3 l, FormKind f) : lift(std::move(l)), form(f) {
    if (!(lift.norm() > 0.0)) throw std::invalid_argument("ProjectivePoint: zero lift");
}

Vec3 ProjectivePoint::normalized_lift() const {
    int imax = 0;
    lift.cwiseAbs().maxCoeff(&imax);
    return lift / lift(imax);
}

bool ProjectivePoint::projectively_equal(const ProjectivePoint& other, double tol) const {
    if (form != other.form) return false;
    int imax = 0;
    lift.cwiseAbs().maxCoeff(&imax);
    if (std::abs(other.lift(imax)) <= tol * other.lift.norm()) return false;
    Vec3 a = lift / lift(imax);
    Vec3 b = other.lift / other.lift(imax);
    return (a - b).norm() <= tol * (a.norm() + b.norm());
}

ProjectivePoint ProjectivePoint::ball(Complex w1, Complex w2) {
    return ProjectivePoint(Vec3(w1, w2, Complex(1.0)), FormKind::Ball);
}

ProjectivePoint ProjectivePoint::siegel(Complex z1, Complex z2) {
    return ProjectivePoint(Vec3(z1, z2, Complex(1.0)), FormKind::Siegel);
}

ProjectivePoint ProjectivePoint::q_infinity() {
    return ProjectivePoint(Vec3(Complex(1.0), Complex(0.0), Complex(0.0)), FormKind::Siegel);
}

ConeSign cone_sign(const ProjectivePoint& p, double tol) {
    const double s = p.self_product().real();
    const double scale = p.lift.squaredNorm();
    if (std::abs(s) <= tol * scale) return ConeSign::Null;
    return s < 0 ? ConeSign::Negative : ConeSign::Positive;
}

double bergman_distance(const ProjectivePoint& u, const ProjectivePoint& v, double tol) {
    if (u.form != v.form) throw std::invalid_argument("bergman_distance: form mismatch");
    if (cone_sign(u, tol) != ConeSign::Negative || cone_sign(v, tol) != ConeSign::Negative)
        throw std::domain_error("bergman_distance: points must lie in the negative cone");
    const Complex uv = hermitian_product(u.lift, v.lift, u.form);
    const Complex uu = hermitian_product(u.lift, u.lift, u.form);
    const Complex vv = hermitian_product(v.lift, v.lift, v.form);
    double ratio = (uv * std::conj(uv)).real() / (uu.real() * vv.real());
    if (ratio < 1.0) ratio = 1.0;  // clamp rounding below cosh^2 = 1
    return 2.0 * std::acosh(std::sqrt(ratio));
}

ProjectivePoint cayley_transform(const ProjectivePoint& p) {
    const FormKind other = p.form == FormKind::Ball ? FormKind::Siegel : FormKind::Ball;
    return ProjectivePoint(cayley_matrix() * p.lift, other);
}

Isometry::Isometry(const Mat3& matrix, FormKind f, double tol) : m(matrix), form(f) {
    const Mat3& h = form_matrix(form);
    const double residual = (matrix.adjoint() * h * matrix - h).norm();
    if (residual > tol * std::max(1.0, matrix.squaredNorm()))
        throw std::invalid_argument("Isometry: matrix does not preserve the form");
    const Complex d = m.determinant();
    if (std::abs(std::abs(d) - 1.0) > 1e-6)
        throw std::invalid_argument("Isometry: determinant is not unimodular");
    m /= principal_cbrt(d);
}

ProjectivePoint Isometry::apply(const ProjectivePoint& p) const {
    if (p.form != form) throw std::invalid_argument("Isometry::apply: form mismatch");
    return ProjectivePoint(m * p.lift, form);
}

Isometry Isometry::inverse() const {
    const Mat3& h = form_matrix(form);
    // A^{-1} = H^{-1} A* H; H1 and H2 are involutions.
    return Isometry(h * m.adjoint() * h, form);
}

Isometry Isometry::operator*(const Isometry& rhs) const {
    if (form != rhs.form) throw std::invalid_argument("Isometry product: form mismatch");
    return Isometry(m * rhs.m, form);
}

Isometry Isometry::identity(FormKind form) { return Isometry(Mat3::Identity(), form); }

double goldman_f(Complex z) {
    const double a = std::abs(z);
    return a * a * a * a - 8.0 * (z * z * z).real() + 18.0 * a * a - 27.0;
}

namespace {

std::optional<RefinedKind> refine_boundary(const Isometry& g, double tol) {
    // Best effort on the f = 0 stratum: identity, unipotent vs screw-parabolic
    // vs special elliptic, decided from the eigenstructure.
    const Mat3& m = g.m;
    // identity up to the cube-root center
    {
        Eigen::Index r, c;
        m.cwiseAbs().maxCoeff(&r, &c);
        if (r == c && (m - m(r, c) * Mat3::Identity()).norm() <= 1e-7 * m.norm())
            return RefinedKind::Identity;
    }
    Eigen::ComplexEigenSolver<Mat3> es(m);
    if (es.info() != Eigen::Success) return std::nullopt;
    const Vec3 ev = es.eigenvalues();
    for (int i = 0; i < 3; ++i)
        if (std::abs(std::abs(ev(i)) - 1.0) > 1e-6) return std::nullopt;
    // repeated eigenvalue?
    int a = -1, b = -1;
    double best = 1e9;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const double d = std::abs(ev(i) - ev(j));
            if (d < best) { best = d; a = i; b = j; }
        }
    if (best > 1e-5) return std::nullopt;  // three distinct unit eigenvalues
    const Complex lambda = 0.5 * (ev(a) + ev(b));
    const Mat3 n = m - lambda * Mat3::Identity();
    const bool unipotent_spectrum = (ev - Vec3::Constant(lambda)).norm() < 1e-5;
    if (unipotent_spectrum) {
        if ((n * n * n).norm() <= 1e-6 * std::max(1.0, m.norm()) && n.norm() > 1e-6)
            return RefinedKind::Unipotent;
        return std::nullopt;
    }
    // diagonalizable with a repeated unit eigenvalue -> special elliptic;
    // non-diagonalizable -> screw-parabolic.  Rank of (m - lambda I) tells:
    // diagonalizable repeated pair needs a 2-dim eigenspace, i.e. rank 1.
    Eigen::JacobiSVD<Mat3> svd(n);
    const double s1 = svd.singularValues()(1);
    if (s1 <= std::max(tol, 1e-6) * svd.singularValues()(0)) return RefinedKind::SpecialElliptic;
    return RefinedKind::ScrewParabolic;
}

}  // namespace

IsometryClass classify_isometry(const Isometry& g, double tol) {
    const Complex tr = g.m.trace();
    const double f = goldman_f(tr);
    const double band = tol * std::max(1.0, std::pow(std::abs(tr), 4.0));
    IsometryClass out{IsometryKind::Boundary, f, std::nullopt};
    if (f > band) {
        out.kind = IsometryKind::Loxodromic;
    } else if (f < -band) {
        out.kind = IsometryKind::RegularElliptic;
    } else {
        out.kind = IsometryKind::Boundary;
        out.refined = refine_boundary(g, tol);
    }
    return out;
}

double cartan_invariant(const ProjectivePoint& p1, const ProjectivePoint& p2,
                        const ProjectivePoint& p3, double tol) {
    if (p1.form != p2.form || p2.form != p3.form)
        throw std::invalid_argument("cartan_invariant: form mismatch");
    const Complex a = hermitian_product(p1.lift, p2.lift, p1.form);
    const Complex b = hermitian_product(p2.lift, p3.lift, p1.form);
    const Complex c = hermitian_product(p3.lift, p1.lift, p1.form);
    const double s12 = p1.lift.norm() * p2.lift.norm();
    const double s23 = p2.lift.norm() * p3.lift.norm();
    const double s31 = p3.lift.norm() * p1.lift.norm();
    if (std::abs(a) <= tol * s12 || std::abs(b) <= tol * s23 || std::abs(c) <= tol * s31)
        throw std::domain_error("cartan_invariant: degenerate triple");
    return std::arg(-a * b * c);
}

Isometry complex_reflection(const ProjectivePoint& polar, double tol) {
    const Complex nn = polar.self_product();
    if (!(nn.real() > tol * polar.lift.squaredNorm()))
        throw std::domain_error("complex_reflection: polar vector must be positive");
    const Mat3& h = form_matrix(polar.form);
    const Vec3& n = polar.lift;
    // row vector p |-> <p,n> is n* H; the reflection is -I + (2/<n,n>) n n* H.
    Mat3 r = -Mat3::Identity() + (2.0 / nn) * (n * (n.adjoint() * h));
    return Isometry(r, polar.form);
}

}  // namespace chplane
