// Projective models of the complex hyperbolic plane over the two standard
// Hermitian forms of signature (2,1): the unit ball (H1 = diag(1,1,-1)) and
// the Siegel domain (H2 = antidiag(1,1,1)).  Provides the Hermitian pairing,
// cone signs, the Bergman distance, the Cayley transform between the models,
// isometries of SU(H) with trace-based classification, Cartan's angular
// invariant and complex reflections.
#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <Eigen/Dense>

namespace chplane {

using Complex = std::complex<double>;
using Mat3 = Eigen::Matrix3cd;
using Vec3 = Eigen::Vector3cd;

inline constexpr double kDefaultTol = 1e-9;

enum class FormKind { Ball, Siegel };

struct HermitianForm {
    FormKind kind;
    const Mat3& matrix() const;

    static HermitianForm ball() { return {FormKind::Ball}; }
    static HermitianForm siegel() { return {FormKind::Siegel}; }
};

// <u,v>_H = v* H u.  Conjugate-symmetric.
Complex hermitian_product(const Vec3& u, const Vec3& v, FormKind form);

// The Cayley matrix C with C^{-1} = C; maps ball lifts to Siegel lifts and back.
const Mat3& cayley_matrix();

struct ProjectivePoint {
    Vec3 lift;
    FormKind form;

    ProjectivePoint(Vec3 l, FormKind f);

    Complex self_product() const { return hermitian_product(lift, lift, form); }
    // Largest-modulus coordinate scaled to 1.
    Vec3 normalized_lift() const;
    bool projectively_equal(const ProjectivePoint& other, double tol = kDefaultTol) const;

    static ProjectivePoint ball(Complex w1, Complex w2);
    static ProjectivePoint siegel(Complex z1, Complex z2);
    static ProjectivePoint q_infinity();  // [1,0,0] against the Siegel form
};

enum class ConeSign { Negative, Null, Positive };

ConeSign cone_sign(const ProjectivePoint& p, double tol = kDefaultTol);

// cosh^2(d/2) = <u,v><v,u> / (<u,u><v,v>); both points in the negative cone.
double bergman_distance(const ProjectivePoint& u, const ProjectivePoint& v,
                        double tol = kDefaultTol);

// Applies the Cayley matrix and flips the form tag.  Involutive.
ProjectivePoint cayley_transform(const ProjectivePoint& p);

struct Isometry {
    Mat3 m;      // det-normalized SU(H) representative
    FormKind form;

    // Accepts any matrix with A* H A = H (unit-modulus determinant); divides by
    // the principal cube root of det so the stored representative has det 1.
    Isometry(const Mat3& matrix, FormKind form, double tol = 1e-7);

    ProjectivePoint apply(const ProjectivePoint& p) const;
    Isometry inverse() const;
    Isometry operator*(const Isometry& rhs) const;

    static Isometry identity(FormKind form);
};

enum class IsometryKind { Loxodromic, RegularElliptic, Boundary };
enum class RefinedKind { Unipotent, ScrewParabolic, SpecialElliptic, Identity };

struct IsometryClass {
    IsometryKind kind;
    double f_value;  // Goldman discriminant f(trace)
    std::optional<RefinedKind> refined;  // best-effort, Boundary cases only
};

// f(z) = |z|^4 - 8 Re(z^3) + 18 |z|^2 - 27.
double goldman_f(Complex z);

// Loxodromic iff f(tr) > tol band, regular elliptic iff below, else Boundary
// with the band |f| <= tol * max(1, |tr|^4).
IsometryClass classify_isometry(const Isometry& g, double tol = kDefaultTol);

// arg(-<p1,p2><p2,p3><p3,p1>) in (-pi,pi]; lands in [-pi/2,pi/2] for null
// triples.  Rejects degenerate triples (a vanishing pairing).
double cartan_invariant(const ProjectivePoint& p1, const ProjectivePoint& p2,
                        const ProjectivePoint& p3, double tol = kDefaultTol);

// p |-> -p + 2(<p,n>/<n,n>) n as a matrix; polar must be a positive vector.
Isometry complex_reflection(const ProjectivePoint& polar, double tol = kDefaultTol);

}  // namespace chplane
