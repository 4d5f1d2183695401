// Intersection analysis of the standard isometric spheres I(theta) in the
// ball model: membership residuals, the pairwise-intersection quartic W and
// triple-intersection quartic Q in the cot-half-angle coordinates
// X = cot(psi1/2), Y = cot(psi2/2), the slope quartic used to locate the four
// boundary points of a crossing, branch-curve sampling, singular angles,
// foliation leaves, the quadruple point, and the kappa-free geographic pair
// inequality.
#pragma once

#include <vector>

#include "chplane/cproj.hpp"
#include "chplane/ellip.hpp"
#include "chplane/heis.hpp"

namespace chplane {

struct XY {
    double x = 0.0;
    double y = 0.0;
};

// |(1-i) w1 e^{-i th} - (1+i) w2 e^{i th} - 2| - |(1-i) w1 - (1+i) w2 - 2|
// on the normalized lift; negative inside I_-(theta), zero on I(theta).
// Rejects omega = q^ball = [1+i, -(1-i), 2].
double standard_sphere_side(const ProjectivePoint& omega, double theta,
                            double tol = kDefaultTol);

struct DiskCoords {
    double psi1 = 0.0, psi2 = 0.0;
    double x = 0.0, y = 0.0;
};

double psi_from_cot(double x);   // psi = 2 atan2(1, x) in (0, 2pi)
double cot_half(double psi);
DiskCoords disk_coords_from_xy(double x, double y);

// Ball-model point on I(theta1) cap I(theta2) with parameters (psi1, psi2).
ProjectivePoint disk_point(double theta1, double theta2, double psi1, double psi2);

struct WCoeffs {
    double c22 = 0, c20 = 0, c02 = 0, c11 = 0, c00 = 0;
    double theta1 = 0, theta2 = 0;
};

WCoeffs w_coefficients(double theta1, double theta2);
double w_eval(const WCoeffs& wc, double x, double y);

struct QCoeffs {
    double c22 = 0, c20 = 0, c02 = 0, c11 = 0;
    // reduced (a,b,c) = (-c20, -c11, -c02)/c22, present iff |c22| > tol
    bool has_reduced = false;
    double a = 0, b = 0, c = 0;
    double theta1 = 0, theta2 = 0, theta3 = 0;
};

QCoeffs q_coefficients(double theta1, double theta2, double theta3,
                       double tol = kDefaultTol);
double q_eval(const QCoeffs& qc, double x, double y);

// The 64-scaled coefficients of the side inequality (Qhat); proportional to
// the Q coefficients by 64 sin(th3/2) sin((th1-th3)/2) sin((th2-th3)/2).
struct QHatCoeffs {
    double c22 = 0, c20 = 0, c02 = 0, c11 = 0;
};
QHatCoeffs q_hat_coefficients(double theta1, double theta2, double theta3);

// The quartic in the slope k = Y/X combining W- and Q-coefficients; always
// vanishes at k = 1.  Requires c22'' away from zero.
double heartsuit(double theta1, double theta2, double theta3, double k);

// One sampled branch of {Q = 0} clipped to {W <= 0}.  For generic angle
// triples the labels are the (eps, tau, sigma) signs of the branch curve
// gamma; for degenerate loci (straight-line or rational-curve branches)
// tau = sigma = 0 and eps tells the half of the branch.
struct CrossingArc {
    int eps = 0, tau = 0, sigma = 0;
    std::vector<XY> samples;  // origin first, boundary point last
};

struct Crossing {
    double theta1 = 0, theta2 = 0, theta3 = 0;
    std::vector<XY> boundary_points;  // exactly 4 on {W = 0} cap {Q = 0}
    std::vector<CrossingArc> arcs;    // exactly 4
};

// Locus routine behind crossing_points and foliation_leaves; accepts any
// theta3 in [0, 2pi], including theta1/theta2 and the singular angles.
Crossing crossing_locus(double theta1, double theta2, double theta3,
                        int samples_per_arc = 48, double tol = kDefaultTol);

// Triple-intersection crossing; rejects theta3 in {theta1, theta2}.
Crossing crossing_points(double theta1, double theta2, double theta3,
                         int samples_per_arc = 48, double tol = kDefaultTol);

// {0, 2pi, th2-th1, 2pi-(th2-th1), th1+th2, th1+th2-2pi} cap [0,2pi], sorted
// and deduplicated.
std::vector<double> singular_angles(double theta1, double theta2,
                                    double tol = kDefaultTol);

struct Leaf {
    double theta3 = 0;
    bool singular = false;  // theta3 in {0, theta1, theta2}
    Crossing locus;
};

// Leaves over the uniform grid theta3 = 2 pi m / grid, m = 0..grid-1.
std::vector<Leaf> foliation_leaves(double theta1, double theta2, int grid,
                                   int samples_per_arc = 48, double tol = kDefaultTol);

struct QuadruplePoint {
    XY point;
    double residual = 0.0;  // distance of the computed common point from the origin
};

// Common point of the crossings (th1,th2,th3) and (th1,th2,th4) inside the
// disk W <= 0, located by damped Newton on (Q3, Q4) from a coarse grid.
QuadruplePoint quadruple_point(double theta1, double theta2, double theta3,
                               double theta4);

// Kappa-free inequality value: nonpositive iff the geographic point of
// I(theta1) lies in I(theta2) or its interior.  Rejects cot(th1/2) = cot(th2/2).
double geo_pair_inequality(double theta1, double theta2, const GeoCoord& gc,
                           double tol = kDefaultTol);

// The composite R' T' H2 T_q adapted to theta1 over a torus base point
// (defaults to the standard q = [-1-2i, sqrt 2, 1]); maps the Siegel model to
// the frame where the leaf centers lie on the real axis of N.  Ball-model
// points travel through cayley_transform first.
Isometry standard_frame(double theta1, const TorusPoint& q = {Complex(-1.0, -2.0),
                                                              Complex(std::sqrt(2.0))});

// Ball-model preimage of a geographic point of I(theta1) in the standard frame.
ProjectivePoint geographic_to_ball(double theta1, const GeoCoord& gc);

// Radius 1/(sqrt 2 |kappa2| sin(theta/2)) of I(E~_{-theta,theta,q}).
double standard_sphere_radius(double theta, const TorusPoint& q = {Complex(-1.0, -2.0),
                                                                   Complex(std::sqrt(2.0))});

}  // namespace chplane
