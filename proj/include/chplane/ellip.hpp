// Elliptic normal forms E_{alpha,beta} in the ball and Siegel models, the
// standard fixed torus |z1+1|^2 = 2|z2|^2 with its circle foliation
// C_q(theta) = E_{theta,-theta}(q), the real-elliptic characterisation, the
// fixed-torus sampler for an arbitrary regular real elliptic isometry, and
// the affine-line form of the pushed-forward R-circle leaves.
#pragma once

#include <functional>

#include "chplane/cproj.hpp"
#include "chplane/heis.hpp"

namespace chplane {

struct EllipticAngles {
    double alpha = 0.0;
    double beta = 0.0;

    bool regular(double tol = kDefaultTol) const;
    // beta == 2 pi - alpha (mod 2 pi)
    bool real_elliptic(double tol = kDefaultTol) const;
};

// The SU representative diag(e^{i a}, e^{i b}, 1) e^{-i(a+b)/3} in the ball
// model, or its Cayley conjugate in the Siegel model (fixing p_E = [-1,0,1]).
Isometry elliptic_normal_form(const EllipticAngles& ang, FormKind model);

// Boundary point with |kappa1 + 1|^2 = 2 |kappa2|^2.
struct TorusPoint {
    Complex kappa1;
    Complex kappa2;
};

// q on the ideal boundary, q != q_infinity, |z1+1|^2 = 2|z2|^2 within tol.
bool torus_membership(const ProjectivePoint& q, double tol = kDefaultTol);

// C_q(theta) = E_{theta,-theta}(q) via the displayed lift
// ((z1+1)/2 e^{i th} + (z1-1)/2, z2 e^{-i th}, (z1+1)/2 e^{i th} - (z1-1)/2).
ProjectivePoint circle_point(const ProjectivePoint& q, double theta);
ProjectivePoint circle_point(const TorusPoint& q, double theta);

struct RealEllipticWitness {
    bool is_real_elliptic = false;
    double theta = 0.0;                     // rotation angle in (0, pi]
    Vec3 fixed_point = Vec3::Zero();        // negative eigenvector
};

// Eigenvalue test: det-normalized spectrum {lam0, lam0 e^{i th}, lam0 e^{-i th}}
// with the lam0 eigenvector negative.  Input must be regular elliptic.
RealEllipticWitness real_elliptic_test(const Isometry& g, double tol = kDefaultTol);

// Sampler of the fixed torus T^2_g = Q(T^2) of a regular real elliptic g:
// (phi, theta) |-> Q(C_{q(phi)}(theta)) with q(phi) the standard leaf base
// points [-(3+2 sqrt 2), (2+sqrt 2) e^{i phi}, 1].
struct TorusSampler {
    Isometry conjugator;  // Q with Q^{-1} g Q = E_{theta,-theta} projectively
    double theta = 0.0;

    ProjectivePoint operator()(double phi, double theta_leaf) const;
};

TorusSampler fixed_torus_of(const Isometry& g, double tol = kDefaultTol);

// Affine-line data of the pushed-forward leaf H2 T_q C_q minus q_infinity:
// {[x e^{i theta0} + x0 + i y0, v0 + 2x y0 cos(theta0) - 2x x0 sin(theta0)]}.
struct RCircleLine {
    double theta0 = 0.0;
    double x0 = 0.0, y0 = 0.0;
    double v0 = 0.0;
    Complex Cz;
    double Ct = 0.0;

    HeisenbergPoint at(double x) const;
};

RCircleLine rcircle_affine_params(const TorusPoint& q, double tol = kDefaultTol);

// Heisenberg translation T_q = T_{[-kappa2, -2 Im kappa1]} sending q to [0,0];
// the composite H2 T_q maps q to q_infinity.
Isometry torus_point_translation(const TorusPoint& q);
Isometry h2_as_isometry();

// Max isometric-sphere membership residual of the C-circle C_{[sqrt 2,0]}
// sampled against I(E_{theta,-theta}); expected 0 for every theta in (0,2pi).
double c_circle_on_sphere_check(double theta, int samples = 32);

}  // namespace chplane
