// Heisenberg-group boundary coordinates of the Siegel model, the stabilizer
// of q_infinity (translations, rotations, dilations), the Cygan and extended
// Cygan metrics, the pullback Cygan metric on the ball model, geographic
// coordinates on Cygan spheres and isometric spheres of Siegel isometries.
#pragma once

#include "chplane/cproj.hpp"

namespace chplane {

// Boundary point [z,t] of the Heisenberg group N = C x R.
struct HeisenbergPoint {
    Complex z;
    double t = 0.0;
};

// Horospherical coordinates [z,t,u], u >= 0; u = 0 on the ideal boundary.
struct HoroPoint {
    Complex z;
    double t = 0.0;
    double u = 0.0;

    HeisenbergPoint boundary() const { return {z, t}; }
};

// Group law [z,t]*[z',t'] = [z+z', t+t'+2 Im(z conj(z'))].
HeisenbergPoint heis_mul(const HeisenbergPoint& p, const HeisenbergPoint& q);
HeisenbergPoint heis_inverse(const HeisenbergPoint& p);

// Standard lift ((-|z|^2-u+it)/2, z, 1).
Vec3 horo_lift(const HoroPoint& p);
ProjectivePoint horo_point(const HoroPoint& p);
// Inverse of the lift; rejects q_infinity (vanishing third coordinate) and
// lifts with u < 0 beyond tolerance.
HoroPoint horo_from_lift(const Vec3& lift, double tol = kDefaultTol);

// Stabilizer of q_infinity in PU(H2).
Isometry heis_translation(const HeisenbergPoint& by);
Isometry heis_rotation(double theta);
Isometry heis_dilation(double lambda);  // lambda != 0

// Action of a Siegel isometry on horospherical coordinates.
HoroPoint horo_apply(const Isometry& g, const HoroPoint& p, double tol = kDefaultTol);

// Extended Cygan metric | |z-w|^2 + |u-v| - i(t-s+2 Im(z conj(w))) |^{1/2};
// restricts to the boundary Cygan metric at u = v = 0.
double cygan_distance(const HoroPoint& p, const HoroPoint& q);
double cygan_distance(const HeisenbergPoint& p, const HeisenbergPoint& q);

// Pullback Cygan metric about a null ball point q_ball; at least one of
// omega, omega_prime must be on the boundary.  Rejects arguments at q_ball.
double pullback_cygan_distance(const ProjectivePoint& omega,
                               const ProjectivePoint& omega_prime,
                               const ProjectivePoint& q_ball,
                               double tol = kDefaultTol);

struct CyganSphere {
    HeisenbergPoint center;
    double radius = 0.0;
};

struct stabilizer_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Isometric sphere of g in SU(H2): center g^{-1}(q_inf), radius sqrt(2/|g31|).
// Throws stabilizer_error when g fixes q_infinity.
CyganSphere isometric_sphere(const Isometry& g, double tol = kDefaultTol);

enum class SphereSide { Inside, On, Outside };

// Compares |<p,q_inf>| with |<p,g^{-1}(q_inf)>| (tolerance-banded).
// Inside = the paper's I_-(g), Outside = I_+(g).
SphereSide sphere_side(const Isometry& g, const ProjectivePoint& p, double tol = kDefaultTol);
// Signed residual |<p,g^{-1}(q_inf)>| - |<p,q_inf>| after scaling g^{-1}(q_inf)
// to the r^2/2 normalization, i.e. d^2-comparison; negative inside.
double sphere_side_residual(const Isometry& g, const ProjectivePoint& p);

// Geographic coordinates on the Cygan sphere S_{[0,0]}(r): angles alpha in
// [-pi/2,pi/2], beta in [0,pi), |omega| <= sqrt(cos(alpha)).
struct GeoCoord {
    double alpha = 0.0;
    double beta = 0.0;
    double omega = 0.0;
    double r = 1.0;
};

// Standard lift (-r^2 e^{-i alpha}/2, r omega e^{i(-alpha/2+beta)}, 1).
ProjectivePoint geographic_point(const GeoCoord& gc, double tol = kDefaultTol);
HoroPoint geographic_horo(const GeoCoord& gc, double tol = kDefaultTol);

}  // namespace chplane
