// The (n,inf,inf)-triangle-group pipeline: the parameter circle (y,z) and the
// t = tan(A/2) parameterisation, the reflection generators I1, I2, I3, the
// closed-form powers of B = I2 I3, the isometric-sphere families I_{j,k}, the
// Cygan disjointness margins rho_{j',j,k}, the tangency verification at
// (1, n-1, 1), the W_A regime classification and the discreteness certificate.
#pragma once

#include <optional>
#include <vector>

#include "chplane/cproj.hpp"
#include "chplane/heis.hpp"

namespace chplane {

struct TriangleParams {
    int n = 3;
    double t = 1.0;        // tan(A/2)
    double angular = 0.0;  // A in (0, pi)
    double y = 0.0, z = 0.0;
};

TriangleParams params_from_t(int n, double t);
TriangleParams params_from_angle(int n, double angular);  // A in (0, pi)
// A recovered as arg(y-1+zi) - arg(y+zi).
double angular_from_yz(double y, double z);

struct TriangleGenerators {
    Isometry i1, i2, i3;
    Isometry a, b;  // A = I1 I2, B = I2 I3
};

TriangleGenerators generators(const TriangleParams& p);

// B^k by the closed form in cos(2 pi k/n), sin(2 pi k/n) and v = B^2 - 2muB + 1.
Isometry power_of_b(const TriangleParams& p, int k);

// Isometry A^k B^j A^{-k}; its isometric sphere is I_{j,k}.
Isometry word_isometry(const TriangleParams& p, int j, int k);

struct SphereFamily {
    TriangleParams params;
    std::vector<double> radii;  // radii[j] for j = 1..n-1 ([0] unused)
    // centers c_{j,k} for |k| <= k_max, index [j][k + k_max]
    std::vector<std::vector<HeisenbergPoint>> centers;
    int k_max = 0;

    const HeisenbergPoint& center(int j, int k) const;
    double radius(int j) const;
};

SphereFamily sphere_family(const TriangleParams& p, int k_max);

// Closed-form radius of I_{j,k} from the proof of the certification theorem.
double sphere_radius_closed_form(const TriangleParams& p, int j);

// rho_{j',j,k} = d_Cyg(c_{j',0}, c_{j,k}) - (r_{j'} + r_j).
double rho(const TriangleParams& p, int jprime, int j, int k);

struct TangencyResiduals {
    double sphere_gap = 0.0;      // |d(c_{1,k}, c_{n-1,k+1}) - (r_1 + r_{n-1})|
    double point_on_spheres = 0.0;  // max distance defect of p_{A^k(AB)A^{-k}}
    double point_nullity = 0.0;     // |<p,p>| of the extracted fixed point
};

TangencyResiduals tangency_check(const TriangleParams& p, int k);

IsometryClass wa_type(const TriangleParams& p);
double wa_trace_formula(const TriangleParams& p);  // 3 + 16(1-y)/(y^2+z^2)

// Largest k with k < 2/sin(pi/n); exact integers resolved within 1e-12.
int certificate_k_bound(int n);

enum class Verdict { Certified, Failed, Boundary };

struct CertificateEntry {
    int jprime = 0, j = 0, k = 0;
    double rho = 0.0;
};

struct DiscretenessCertificate {
    int n = 0;
    double t = 0.0;
    int k_bound = 0;
    std::vector<CertificateEntry> entries;
    TangencyResiduals tangency;
    Verdict verdict = Verdict::Failed;
    double min_margin = 0.0;
    std::optional<CertificateEntry> witness;  // minimal margin entry
};

// rho over all j', j in 1..n-1 and 1 <= k <= k_bound except (1, n-1, 1),
// plus the tangency check there.  Certified needs every margin > tol and the
// tangency residuals below tol; margins inside [-tol, tol] give Boundary.
DiscretenessCertificate certify(const TriangleParams& p, double tol = kDefaultTol);

struct SweepRow {
    double t = 0.0;
    std::vector<CertificateEntry> entries;
    Verdict verdict = Verdict::Failed;
};

std::vector<SweepRow> certify_sweep(int n, double t_min, double t_max, int grid,
                                    double tol = kDefaultTol);

// Bisection on t |-> rho(j',j,k) over [t_lo, t_hi]; requires a sign change.
double rho_root_bisect(int n, int jprime, int j, int k, double t_lo, double t_hi,
                       double tol = 1e-12);

}  // namespace chplane
