#include "chplane/isect.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "chplane/ellip.hpp"

namespace chplane {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_angle_pair(double t1, double t2) {
    if (!(0.0 < t1 && t1 < t2 && t2 < kTwoPi))
        throw std::invalid_argument("angles must satisfy 0 < theta1 < theta2 < 2pi");
}

double sh(double x) { return std::sin(x / 2.0); }

}  // namespace

double standard_sphere_side(const ProjectivePoint& omega, double theta, double tol) {
    if (omega.form != FormKind::Ball)
        throw std::invalid_argument("standard_sphere_side: ball-model point required");
    const Vec3 v = omega.lift / omega.lift(2);
    const Complex w1 = v(0), w2 = v(1);
    const Complex i(0.0, 1.0);
    const double den = std::abs((1.0 - i) * w1 - (1.0 + i) * w2 - 2.0);
    if (den <= tol)
        throw std::domain_error("standard_sphere_side: omega equals q^ball");
    const double num = std::abs((1.0 - i) * w1 * std::polar(1.0, -theta) -
                                (1.0 + i) * w2 * std::polar(1.0, theta) - 2.0);
    return num - den;
}

double psi_from_cot(double x) { return 2.0 * std::atan2(1.0, x); }

double cot_half(double psi) { return std::cos(psi / 2.0) / std::sin(psi / 2.0); }

DiskCoords disk_coords_from_xy(double x, double y) {
    return {psi_from_cot(x), psi_from_cot(y), x, y};
}

ProjectivePoint disk_point(double theta1, double theta2, double psi1, double psi2) {
    require_angle_pair(theta1, theta2);
    const Complex i(0.0, 1.0);
    const Complex e1 = std::polar(1.0, psi1), e2 = std::polar(1.0, psi2);
    const Complex n1 = e1 * (std::polar(1.0, theta2) - 1.0) + e2 * (1.0 - std::polar(1.0, theta1)) +
                       std::polar(1.0, theta2) - std::polar(1.0, theta1);
    const Complex n2 = e1 * (std::polar(1.0, -theta2) - 1.0) + e2 * (1.0 - std::polar(1.0, -theta1)) +
                       std::polar(1.0, -theta2) - std::polar(1.0, -theta1);
    const Complex d = -2.0 * i * std::sin(theta1) * e2 + 2.0 * i * std::sin(theta2) * e1 +
                      2.0 * i * std::sin(theta2 - theta1);
    if (std::abs(d) < 1e-14)
        throw std::domain_error("disk_point: degenerate (psi1, psi2) parameters");
    return ProjectivePoint::ball((1.0 + i) * n1 / d, (1.0 - i) * n2 / d);
}

WCoeffs w_coefficients(double t1, double t2) {
    require_angle_pair(t1, t2);
    WCoeffs w;
    w.theta1 = t1;
    w.theta2 = t2;
    w.c22 = 2.0 * sh(t1 - t2) * sh(t1 - t2) *
            (6.0 - std::cos(t1 - t2) - std::cos(t1 + t2) - 2.0 * std::cos(t1) - 2.0 * std::cos(t2));
    w.c20 = 2.0 * sh(t2) * sh(t2) *
            (6.0 - 2.0 * std::cos(t1 - t2) - std::cos(2.0 * t1 - t2) - 2.0 * std::cos(t1) -
             std::cos(t2));
    w.c02 = 2.0 * sh(t1) * sh(t1) *
            (6.0 - 2.0 * std::cos(t1 - t2) - std::cos(t1 - 2.0 * t2) - std::cos(t1) -
             2.0 * std::cos(t2));
    w.c11 = -16.0 * sh(t1) * sh(t1) * sh(t2) * sh(t2);
    w.c00 = w.c11 * sh(t1 - t2) * sh(t1 - t2);
    return w;
}

double w_eval(const WCoeffs& w, double x, double y) {
    return w.c22 * x * x * y * y + w.c20 * x * x + w.c02 * y * y + 2.0 * w.c11 * x * y + w.c00;
}

QCoeffs q_coefficients(double t1, double t2, double t3, double tol) {
    require_angle_pair(t1, t2);
    if (!(-tol <= t3 && t3 <= kTwoPi + tol))
        throw std::invalid_argument("q_coefficients: theta3 outside [0, 2pi]");
    QCoeffs q;
    q.theta1 = t1;
    q.theta2 = t2;
    q.theta3 = t3;
    q.c22 = sh(t1 - t2) * sh(t1 - t2) * sh(t3 - (t1 + t2));
    q.c20 = sh(t2) * sh(t2) * sh(t1 - t2 + t3);
    q.c02 = sh(t1) * sh(t1) * sh(t2 - t1 + t3);
    q.c11 = -sh(t1) * sh(t2) * sh(t3);
    if (std::abs(q.c22) > tol) {
        q.has_reduced = true;
        q.a = -q.c20 / q.c22;
        q.b = -q.c11 / q.c22;
        q.c = -q.c02 / q.c22;
    }
    return q;
}

double q_eval(const QCoeffs& q, double x, double y) {
    return q.c22 * x * x * y * y + q.c20 * x * x + q.c02 * y * y + 2.0 * q.c11 * x * y;
}

QHatCoeffs q_hat_coefficients(double t1, double t2, double t3) {
    require_angle_pair(t1, t2);
    QHatCoeffs q;
    const double common = 64.0 * sh(t3) * sh(t1 - t3) * sh(t2 - t3);
    q.c22 = common * sh(t1 - t2) * sh(t1 - t2) * sh(t3 - (t1 + t2));
    q.c20 = common * sh(t2) * sh(t2) * sh(t1 - t2 + t3);
    q.c02 = common * sh(t1) * sh(t1) * sh(t2 - t1 + t3);
    q.c11 = -common * sh(t1) * sh(t2) * sh(t3);
    return q;
}

double heartsuit(double t1, double t2, double t3, double k) {
    const WCoeffs w = w_coefficients(t1, t2);
    const QCoeffs q = q_coefficients(t1, t2, t3);
    if (!q.has_reduced)
        throw std::domain_error("heartsuit: c22'' vanishes for this angle triple");
    const double p = q.c20 + q.c02 * k * k + 2.0 * q.c11 * k;
    const double r = w.c20 + w.c02 * k * k + 2.0 * w.c11 * k;
    return (w.c22 / (q.c22 * q.c22)) * p * p - (1.0 / q.c22) * r * p + w.c00 * k * k;
}

namespace {

// x^2 determined by Q(x, kx) = 0 for a slope k != 0 when c22'' != 0.
double xhat_of_slope(const QCoeffs& q, double k) {
    return -(q.c20 + q.c02 * k * k + 2.0 * q.c11 * k) / (q.c22 * k * k);
}

// Quartic heartsuit coefficients (degree 4 .. 0) and synthetic deflation by (k-1).
std::array<double, 5> heartsuit_coeffs(const WCoeffs& w, const QCoeffs& q) {
    const double A = w.c22 / (q.c22 * q.c22);
    // P(k) = c02'' k^2 + 2 c11'' k + c20''; R(k) = c02 k^2 + 2 c11 k + c20
    const double p2 = q.c02, p1 = 2.0 * q.c11, p0 = q.c20;
    const double r2 = w.c02, r1 = 2.0 * w.c11, r0 = w.c20;
    std::array<double, 5> h{};
    h[0] = A * p2 * p2 - r2 * p2 / q.c22;
    h[1] = A * 2.0 * p2 * p1 - (r2 * p1 + r1 * p2) / q.c22;
    h[2] = A * (2.0 * p2 * p0 + p1 * p1) - (r2 * p0 + r1 * p1 + r0 * p2) / q.c22 + w.c00;
    h[3] = A * 2.0 * p1 * p0 - (r1 * p0 + r0 * p1) / q.c22;
    h[4] = A * p0 * p0 - r0 * p0 / q.c22;
    return h;
}

std::array<double, 4> deflate_at_one(const std::array<double, 5>& h) {
    // h(k) = (k - 1) c(k) + rem; heartsuit(1) = 0 makes rem negligible.
    std::array<double, 4> c{};
    double carry = h[0];
    for (int i = 0; i < 4; ++i) {
        c[i] = carry;
        carry = h[i + 1] + carry;
    }
    return c;
}

std::vector<double> real_cubic_roots(const std::array<double, 4>& c) {
    // Companion-matrix roots, then a Newton polish on the cubic.
    std::vector<double> out;
    if (std::abs(c[0]) < 1e-13 * (std::abs(c[1]) + std::abs(c[2]) + std::abs(c[3]))) {
        // effectively quadratic
        const double a = c[1], b = c[2], d = c[3];
        if (std::abs(a) < 1e-300) {
            if (std::abs(b) > 0) out.push_back(-d / b);
            return out;
        }
        const double disc = b * b - 4.0 * a * d;
        if (disc < 0) return out;
        const double s = std::sqrt(disc);
        const double q = -0.5 * (b + (b >= 0 ? s : -s));
        out.push_back(q / a);
        if (std::abs(q) > 0) out.push_back(d / q);
        return out;
    }
    Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
    comp(0, 0) = -c[1] / c[0];
    comp(0, 1) = -c[2] / c[0];
    comp(0, 2) = -c[3] / c[0];
    comp(1, 0) = 1.0;
    comp(2, 1) = 1.0;
    Eigen::EigenSolver<Eigen::Matrix3d> es(comp);
    for (int i = 0; i < 3; ++i) {
        const std::complex<double> r = es.eigenvalues()(i);
        if (std::abs(r.imag()) > 1e-8 * std::max(1.0, std::abs(r.real()))) continue;
        double k = r.real();
        for (int it = 0; it < 60; ++it) {
            const double f = ((c[0] * k + c[1]) * k + c[2]) * k + c[3];
            const double fp = (3.0 * c[0] * k + 2.0 * c[1]) * k + c[2];
            if (std::abs(fp) < 1e-300) break;
            const double step = f / fp;
            k -= step;
            if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(k))) break;
        }
        out.push_back(k);
    }
    return out;
}

// W restricted to the ray/segment parameterisations used for arc clipping.
struct WOnCurve {
    const WCoeffs& w;
    std::function<XY(double)> point;
    double operator()(double s) const {
        const XY p = point(s);
        return w_eval(w, p.x, p.y);
    }
};

double bisect_boundary(const WOnCurve& f, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) <= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

CrossingArc sample_arc(const std::function<XY(double)>& curve, double s_end, int eps, int tau,
                       int sigma, int n) {
    CrossingArc arc{eps, tau, sigma, {}};
    arc.samples.reserve(n + 5);
    for (int i = 0; i <= n; ++i) arc.samples.push_back(curve(s_end * i / n));
    // refine towards the W = 0 endpoint
    for (double f : {0.9995, 0.9999, 0.99999})
        arc.samples.insert(arc.samples.end() - 1, curve(s_end * f));
    return arc;
}

// Expands hi until the curve point leaves the (bounded) disk W <= 0.
double expand_until_outside(const WOnCurve& f, double hi0) {
    double hi = hi0;
    for (int i = 0; i < 200 && f(hi) <= 0.0; ++i) hi *= 1.6;
    return hi;
}

void add_line_branch(Crossing& cr, const WCoeffs& w, double kx, double ky, int n) {
    // Line {(kx s, ky s)}; boundary where W = 0 along it.
    const WOnCurve f{w, [kx, ky](double s) { return XY{kx * s, ky * s}; }};
    const double s_end = bisect_boundary(f, 0.0, expand_until_outside(f, 1.0));
    for (int eps : {+1, -1}) {
        const auto curve = [kx, ky, eps](double s) { return XY{eps * kx * s, eps * ky * s}; };
        cr.arcs.push_back(sample_arc(curve, s_end, eps, 0, 0, n));
        cr.boundary_points.push_back(curve(s_end));
    }
}

}  // namespace

Crossing crossing_locus(double t1, double t2, double t3, int samples_per_arc, double tol) {
    require_angle_pair(t1, t2);
    const WCoeffs w = w_coefficients(t1, t2);
    QCoeffs q = q_coefficients(t1, t2, t3);
    Crossing cr;
    cr.theta1 = t1;
    cr.theta2 = t2;
    cr.theta3 = t3;
    const int n = std::max(8, samples_per_arc);

    // Near-singular angles are answered by the degenerate-case loci instead of
    // the generic branch machinery (cancellation in sqrt((sigma chi - 2b)^2 - 4ac)).
    const double coeff_scale =
        std::abs(q.c22) + std::abs(q.c20) + std::abs(q.c02) + std::abs(q.c11);
    const double near = 1e-6;
    bool c22_zero = std::abs(q.c22) <= near * coeff_scale;
    bool a_zero = std::abs(q.c20) <= near * coeff_scale;
    bool c_zero = std::abs(q.c02) <= near * coeff_scale;

    if (c22_zero) {
        // Q = c20 X^2 + c02 Y^2 + 2 c11 XY: two lines through the origin.
        if (std::abs(q.c02) > near * coeff_scale) {
            const double disc = q.c11 * q.c11 - q.c20 * q.c02;
            const double s = std::sqrt(std::max(0.0, disc));
            for (double k : {(-q.c11 + s) / q.c02, (-q.c11 - s) / q.c02})
                add_line_branch(cr, w, 1.0, k, n);
        } else if (std::abs(q.c20) > near * coeff_scale) {
            add_line_branch(cr, w, 0.0, 1.0, n);                      // X = 0
            add_line_branch(cr, w, 1.0, -q.c20 / (2.0 * q.c11), n);   // c20 X + 2 c11 Y = 0
        } else {
            add_line_branch(cr, w, 0.0, 1.0, n);
            add_line_branch(cr, w, 1.0, 0.0, n);
        }
        return cr;
    }

    if (a_zero && c_zero) {
        // theta3 = pi with theta2 - theta1 = pi: locus X = 0, Y = 0 and a
        // hyperbola branch lying outside the disk.
        add_line_branch(cr, w, 0.0, 1.0, n);
        add_line_branch(cr, w, 1.0, 0.0, n);
        return cr;
    }

    if (a_zero || c_zero) {
        // One axis line plus the rational branch Y = 2bX/(X^2-c) (or mirrored).
        const bool swap = c_zero;  // c = 0: branch X = 2bY/(Y^2-a)
        const double b = q.b, ac = swap ? q.a : q.c;
        add_line_branch(cr, w, swap ? 0.0 : 1.0, swap ? 1.0 : 0.0, n);
        const auto curve = [b, ac, swap](double s) {
            const double other = 2.0 * b * s / (s * s - ac);
            return swap ? XY{other, s} : XY{s, other};
        };
        const WOnCurve f{w, curve};
        double hi = ac > 0 ? std::sqrt(ac) * (1.0 - 1e-12) : expand_until_outside(f, 1.0);
        const double s_end = bisect_boundary(f, 0.0, hi);
        for (int eps : {+1, -1}) {
            const auto half = [curve, eps](double s) {
                const XY p = curve(s);
                return XY{eps * p.x, eps * p.y};
            };
            cr.arcs.push_back(sample_arc(half, s_end, eps, 0, 0, n));
            cr.boundary_points.push_back(half(s_end));
        }
        return cr;
    }

    // Generic case: pick the branch row from the signs of (a, b, c).
    const double a = q.a, b = q.b, c = q.c;
    struct Row {
        int tau, sigma;
    };
    std::array<Row, 2> rows{};
    double chi_max = -1.0;  // < 0: unbounded until W > 0
    if (a > 0 && c < 0) {
        rows = {Row{+1, +1}, Row{+1, -1}};
    } else if (a < 0 && c > 0) {
        rows = {Row{-1, +1}, Row{-1, -1}};
    } else if (a > 0 && b < 0 && c > 0) {
        rows = {Row{+1, +1}, Row{-1, +1}};
    } else if (a < 0 && b > 0 && c < 0) {
        rows = {Row{+1, +1}, Row{-1, +1}};
        chi_max = 2.0 * b - 2.0 * std::sqrt(a * c);
    } else if (a < 0 && b < 0 && c < 0) {
        rows = {Row{+1, -1}, Row{-1, -1}};
        chi_max = -(2.0 * b + 2.0 * std::sqrt(a * c));
    } else {
        throw std::runtime_error("crossing_locus: impossible sign pattern (a,b,c all positive)");
    }

    const auto xhat = [&](int tau, int sigma, double chi) {
        const double s = sigma * chi;
        const double disc = (s - 2.0 * b) * (s - 2.0 * b) - 4.0 * a * c;
        if (disc < 0.0) return -1.0;
        return s / (2.0 * a) * ((s - 2.0 * b) + tau * sigma * std::sqrt(disc));
    };

    for (const Row& row : rows) {
        const auto curve = [&, row](double chi) {
            if (chi <= 0.0) return XY{0.0, 0.0};
            const double xh = xhat(row.tau, row.sigma, chi);
            const double x = std::sqrt(std::max(xh, 0.0));
            return XY{x, x > 0 ? row.sigma * chi / x : 0.0};
        };
        const WOnCurve f{w, curve};
        double hi = chi_max > 0 ? chi_max * (1.0 - 1e-12) : expand_until_outside(f, 1.0);
        const double chi_end = bisect_boundary(f, 0.0, hi);
        for (int eps : {+1, -1}) {
            const auto half = [curve, eps](double chi) {
                const XY p = curve(chi);
                return XY{eps * p.x, eps * p.y};
            };
            cr.arcs.push_back(sample_arc(half, chi_end, eps, row.tau, row.sigma, n));
        }
    }

    // Boundary points by slope isolation: deflate the guaranteed heartsuit
    // root k = 1 and solve the residual cubic; each admissible slope carries a
    // unique x^2 from the Q = 0 relation.
    const auto hcoef = heartsuit_coeffs(w, q);
    for (double k : real_cubic_roots(deflate_at_one(hcoef))) {
        if (std::abs(k) < 1e-12) continue;
        const double xh = xhat_of_slope(q, k);
        if (!(xh > tol)) continue;
        const double x = std::sqrt(xh);
        cr.boundary_points.push_back({x, k * x});
        cr.boundary_points.push_back({-x, -k * x});
    }
    if (cr.boundary_points.size() != 4)
        throw std::runtime_error("crossing_locus: boundary-point count is not 4");
    return cr;
}

Crossing crossing_points(double t1, double t2, double t3, int samples_per_arc, double tol) {
    if (std::min(std::abs(t3 - t1), std::abs(t3 - t2)) <= tol)
        throw std::invalid_argument("crossing_points: theta3 collides with theta1/theta2");
    Crossing cr = crossing_locus(t1, t2, t3, samples_per_arc, tol);
    if (cr.arcs.size() != 4) throw std::runtime_error("crossing_points: arc count is not 4");
    return cr;
}

std::vector<double> singular_angles(double t1, double t2, double tol) {
    require_angle_pair(t1, t2);
    std::vector<double> raw{0.0,          kTwoPi,        t2 - t1, kTwoPi - (t2 - t1),
                            t1 + t2,      t1 + t2 - kTwoPi};
    std::vector<double> out;
    for (double s : raw) {
        if (s < -tol || s > kTwoPi + tol) continue;
        s = std::clamp(s, 0.0, kTwoPi);
        bool dup = false;
        for (double t : out) dup = dup || std::abs(t - s) <= tol;
        if (!dup) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Leaf> foliation_leaves(double t1, double t2, int grid, int samples_per_arc,
                                   double tol) {
    require_angle_pair(t1, t2);
    if (grid < 2) throw std::invalid_argument("foliation_leaves: grid must be >= 2");
    std::vector<Leaf> leaves;
    leaves.reserve(grid);
    for (int m = 0; m < grid; ++m) {
        const double t3 = kTwoPi * m / grid;
        Leaf leaf;
        leaf.theta3 = t3;
        leaf.singular = std::abs(t3) <= tol || std::abs(t3 - t1) <= tol || std::abs(t3 - t2) <= tol;
        leaf.locus = crossing_locus(t1, t2, t3, samples_per_arc, tol);
        leaves.push_back(std::move(leaf));
    }
    return leaves;
}

QuadruplePoint quadruple_point(double t1, double t2, double t3, double t4) {
    // set semantics: order the four angles, use the two smallest as the disk pair
    std::array<double, 4> ths{t1, t2, t3, t4};
    std::sort(ths.begin(), ths.end());
    for (int i = 0; i < 3; ++i)
        if (!(ths[i + 1] - ths[i] > kDefaultTol))
            throw std::invalid_argument("quadruple_point: angles must be pairwise distinct");
    t1 = ths[0];
    t2 = ths[1];
    t3 = ths[2];
    t4 = ths[3];
    require_angle_pair(t1, t2);
    const WCoeffs w = w_coefficients(t1, t2);
    const QCoeffs q3 = q_coefficients(t1, t2, t3);
    const QCoeffs q4 = q_coefficients(t1, t2, t4);
    const double rx = 1.5 * std::sqrt(std::max(-w.c00 / w.c20, -w.c00 / w.c02));
    auto refine = [&](double x, double y) {
        for (int it = 0; it < 200; ++it) {
            const Eigen::Vector2d f(q_eval(q3, x, y), q_eval(q4, x, y));
            Eigen::Matrix2d j;
            j(0, 0) = 2.0 * q3.c22 * x * y * y + 2.0 * q3.c20 * x + 2.0 * q3.c11 * y;
            j(0, 1) = 2.0 * q3.c22 * x * x * y + 2.0 * q3.c02 * y + 2.0 * q3.c11 * x;
            j(1, 0) = 2.0 * q4.c22 * x * y * y + 2.0 * q4.c20 * x + 2.0 * q4.c11 * y;
            j(1, 1) = 2.0 * q4.c22 * x * x * y + 2.0 * q4.c02 * y + 2.0 * q4.c11 * x;
            // least-squares step handles the singular Jacobian at the origin
            const Eigen::Vector2d step =
                j.jacobiSvd(Eigen::ComputeFullU | Eigen::ComputeFullV).solve(-f);
            x += step(0);
            y += step(1);
            if (step.norm() < 1e-18) break;
        }
        return XY{x, y};
    };
    QuadruplePoint best;
    best.residual = std::numeric_limits<double>::infinity();
    for (int i = -3; i <= 3; ++i) {
        for (int j = -3; j <= 3; ++j) {
            if (i == 0 && j == 0) continue;  // convergence to the origin must be earned
            const double x0 = rx * i / 3.0, y0 = rx * j / 3.0;
            if (w_eval(w, x0, y0) > 0.0) continue;
            const XY p = refine(x0, y0);
            const double fres = std::hypot(q_eval(q3, p.x, p.y), q_eval(q4, p.x, p.y));
            if (fres > 1e-10) continue;
            if (w_eval(w, p.x, p.y) > 1e-9) continue;  // p_nabla-type solutions excluded
            const double r = std::hypot(p.x, p.y);
            if (r < best.residual) {
                best.point = p;
                best.residual = r;
            }
        }
    }
    if (!std::isfinite(best.residual))
        throw std::runtime_error("quadruple_point: no common point found inside the disk");
    return best;
}

double geo_pair_inequality(double t1, double t2, const GeoCoord& gc, double tol) {
    if (!(0.0 < t1 && t1 < kTwoPi && 0.0 < t2 && t2 < kTwoPi))
        throw std::invalid_argument("geo_pair_inequality: angles must lie in (0, 2pi)");
    const double dx = cot_half(t1) - cot_half(t2);
    if (std::abs(dx) <= tol)
        throw std::domain_error("geo_pair_inequality: cot(theta1/2) = cot(theta2/2)");
    const double s1 = sh(t1), s2 = sh(t2);
    const double om = gc.omega, al = gc.alpha, be = gc.beta;
    return 4.0 * om * om / (s1 * s1) -
           4.0 / (dx * s1) *
               (std::cos(al / 2.0 + be) / (s1 * s1) + dx * dx * std::cos(-al / 2.0 + be)) * om +
           dx * dx + 2.0 * std::cos(al) / (s1 * s1) +
           (1.0 / (s1 * s1 * s1 * s1) - 1.0 / (s2 * s2 * s2 * s2)) / (dx * dx);
}

double standard_sphere_radius(double theta, const TorusPoint& q) {
    return 1.0 / (std::sqrt(2.0) * std::abs(q.kappa2) * std::sin(theta / 2.0));
}

Isometry standard_frame(double theta1, const TorusPoint& q) {
    const Isometry m0 = h2_as_isometry() * torus_point_translation(q);
    const HoroPoint c1 = horo_apply(m0, horo_from_lift(circle_point(q, theta1).lift));
    const Isometry tp = heis_translation(heis_inverse(c1.boundary()));
    const Complex cz = q.kappa2 * (q.kappa1 + 3.0) * Complex(0, 1) / (4.0 * std::norm(q.kappa2));
    const Isometry rp = heis_rotation(std::arg(std::conj(-cz / std::abs(cz))));
    return rp * tp * m0;
}

ProjectivePoint geographic_to_ball(double theta1, const GeoCoord& gc) {
    GeoCoord on_sphere = gc;
    on_sphere.r = standard_sphere_radius(theta1);
    const ProjectivePoint p_frame = geographic_point(on_sphere);
    const Isometry m = standard_frame(theta1);
    return cayley_transform(m.inverse().apply(p_frame));
}

}  // namespace chplane
