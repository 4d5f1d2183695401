#include "chplane/trigroup.hpp"

#include <cmath>
#include <numbers>

namespace chplane {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TriangleParams params_from_t(int n, double t) {
    if (n < 3) throw std::invalid_argument("params_from_t: n >= 3 required");
    if (!(t > 0.0)) throw std::invalid_argument("params_from_t: t > 0 required");
    const double c = std::cos(kPi / n);
    const double w = (1.0 - t * t) / (1.0 + t * t);
    const double den = 2.0 * w * c - (1.0 + c * c);
    TriangleParams p;
    p.n = n;
    p.t = t;
    p.y = (w * c - 1.0) / den;
    p.z = (-2.0 * t / (1.0 + t * t) * c) / den;
    p.angular = 2.0 * std::atan(t);
    return p;
}

TriangleParams params_from_angle(int n, double angular) {
    if (!(0.0 < angular && angular < kPi))
        throw std::invalid_argument("params_from_angle: A in (0, pi) required");
    return params_from_t(n, std::tan(angular / 2.0));
}

double angular_from_yz(double y, double z) {
    return std::arg(Complex(y - 1.0, z)) - std::arg(Complex(y, z));
}

TriangleGenerators generators(const TriangleParams& p) {
    const double s = p.y * p.y + p.z * p.z;
    if (s <= kDefaultTol) throw std::invalid_argument("generators: y^2 + z^2 vanishes");
    Mat3 m1 = Mat3::Zero();
    m1(0, 0) = -1.0;
    m1(1, 1) = 1.0;
    m1(2, 2) = -1.0;
    Mat3 m2 = Mat3::Zero();
    m2(0, 0) = -1.0;
    m2(0, 1) = -2.0;
    m2(0, 2) = 2.0;
    m2(1, 1) = 1.0;
    m2(1, 2) = -2.0;
    m2(2, 2) = -1.0;
    const Complex yz(p.y, p.z);
    Mat3 m3 = Mat3::Zero();
    m3(0, 0) = -1.0;
    m3(1, 0) = 2.0 * yz / s;
    m3(1, 1) = 1.0;
    m3(2, 0) = 2.0 / s;
    m3(2, 1) = 2.0 * std::conj(yz) / s;
    m3(2, 2) = -1.0;
    TriangleGenerators g{Isometry(m1, FormKind::Siegel), Isometry(m2, FormKind::Siegel),
                         Isometry(m3, FormKind::Siegel),
                         Isometry(m1 * m2, FormKind::Siegel),
                         Isometry(m2 * m3, FormKind::Siegel)};
    return g;
}

Isometry power_of_b(const TriangleParams& p, int k) {
    const TriangleGenerators g = generators(p);
    const double mu = std::cos(2.0 * kPi / p.n);
    const Mat3& b = g.b.m;
    const Mat3 v = b * b - 2.0 * mu * b + Mat3::Identity();
    const double ck = std::cos(2.0 * kPi * k / p.n);
    const double sk = std::sin(2.0 * kPi * k / p.n);
    const Mat3 m = ck * Mat3::Identity() +
                   sk / std::sin(2.0 * kPi / p.n) * (b - mu * Mat3::Identity() - 0.5 * v) +
                   (1.0 - ck) / (4.0 * std::sin(kPi / p.n) * std::sin(kPi / p.n)) * v;
    return Isometry(m, FormKind::Siegel);
}

Isometry word_isometry(const TriangleParams& p, int j, int k) {
    const TriangleGenerators g = generators(p);
    Mat3 ak = Mat3::Identity();
    Mat3 a = g.a.m;
    const Mat3 a_inv = g.a.inverse().m;
    for (int i = 0; i < std::abs(k); ++i) ak = ak * (k > 0 ? a : a_inv);
    Mat3 bj = Mat3::Identity();
    const int jr = ((j % p.n) + p.n) % p.n;
    for (int i = 0; i < jr; ++i) bj = bj * g.b.m;
    Mat3 ak_inv = Mat3::Identity();
    for (int i = 0; i < std::abs(k); ++i) ak_inv = ak_inv * (k > 0 ? a_inv : a);
    return Isometry(ak * bj * ak_inv, FormKind::Siegel);
}

const HeisenbergPoint& SphereFamily::center(int j, int k) const {
    if (j < 1 || j > params.n - 1 || std::abs(k) > k_max)
        throw std::out_of_range("SphereFamily::center");
    return centers[j][k + k_max];
}

double SphereFamily::radius(int j) const {
    if (j < 1 || j > params.n - 1) throw std::out_of_range("SphereFamily::radius");
    return radii[j];
}

SphereFamily sphere_family(const TriangleParams& p, int k_max) {
    SphereFamily f;
    f.params = p;
    f.k_max = k_max;
    f.radii.assign(p.n, 0.0);
    f.centers.assign(p.n, std::vector<HeisenbergPoint>(2 * k_max + 1));
    for (int j = 1; j <= p.n - 1; ++j) {
        const CyganSphere base = isometric_sphere(word_isometry(p, j, 0));
        f.radii[j] = base.radius;
        for (int k = -k_max; k <= k_max; ++k) {
            // A acts as the Heisenberg translation T_{[-2,0]} on the centers
            f.centers[j][k + k_max] = heis_mul({Complex(-2.0 * k), 0.0}, base.center);
        }
    }
    return f;
}

double sphere_radius_closed_form(const TriangleParams& p, int j) {
    const double t = p.t;
    const double c4 = std::pow(std::cos(kPi / (2.0 * p.n)), 4);
    const double s4 = std::pow(std::sin(kPi / (2.0 * p.n)), 4);
    return 0.5 * std::sqrt(t * t + 1.0) * std::sin(kPi / p.n) /
           std::sqrt(t * t * c4 + s4) / std::sin(kPi * j / p.n);
}

double rho(const TriangleParams& p, int jprime, int j, int k) {
    if (jprime < 1 || jprime > p.n - 1 || j < 1 || j > p.n - 1)
        throw std::invalid_argument("rho: sphere indices must lie in 1..n-1");
    const CyganSphere s_jp = isometric_sphere(word_isometry(p, jprime, 0));
    const CyganSphere s_j = isometric_sphere(word_isometry(p, j, 0));
    const HeisenbergPoint c_jk = heis_mul({Complex(-2.0 * k), 0.0}, s_j.center);
    return cygan_distance(s_jp.center, c_jk) - (s_jp.radius + s_j.radius);
}

TangencyResiduals tangency_check(const TriangleParams& p, int k) {
    const CyganSphere s1 = isometric_sphere(word_isometry(p, 1, k));
    const CyganSphere s2 = isometric_sphere(word_isometry(p, p.n - 1, k + 1));
    TangencyResiduals res;
    res.sphere_gap = std::abs(cygan_distance(s1.center, s2.center) - (s1.radius + s2.radius));
    // fixed point of the unipotent A^k (AB) A^{-k} = A^{k+1} (A^{-1} AB) ... = A^k A B A^{-k}
    const TriangleGenerators g = generators(p);
    Mat3 ak = Mat3::Identity();
    const Mat3 a_inv = g.a.inverse().m;
    for (int i = 0; i < std::abs(k); ++i) ak = ak * (k >= 0 ? g.a.m : a_inv);
    Mat3 ak_inv = Mat3::Identity();
    for (int i = 0; i < std::abs(k); ++i) ak_inv = ak_inv * (k >= 0 ? a_inv : g.a.m);
    const Mat3 m = ak * (g.a.m * g.b.m) * ak_inv;
    // kernel direction of (m - I): smallest singular value
    Eigen::JacobiSVD<Mat3> svd(m - Mat3::Identity(), Eigen::ComputeFullV);
    if (svd.singularValues()(2) > 1e-6)
        throw std::domain_error("tangency_check: A^k(AB)A^{-k} is not unipotent");
    const Vec3 v = svd.matrixV().col(2);
    res.point_nullity = std::abs(hermitian_product(v, v, FormKind::Siegel)) / v.squaredNorm();
    const HoroPoint fp = horo_from_lift(v, 1e-6);
    res.point_on_spheres = std::max(
        std::abs(cygan_distance(fp, HoroPoint{s1.center.z, s1.center.t, 0.0}) - s1.radius),
        std::abs(cygan_distance(fp, HoroPoint{s2.center.z, s2.center.t, 0.0}) - s2.radius));
    return res;
}

double wa_trace_formula(const TriangleParams& p) {
    return 3.0 + 16.0 * (1.0 - p.y) / (p.y * p.y + p.z * p.z);
}

IsometryClass wa_type(const TriangleParams& p) {
    const TriangleGenerators g = generators(p);
    return classify_isometry(Isometry(g.i1.m * g.i3.m * g.i2.m * g.i3.m, FormKind::Siegel));
}

int certificate_k_bound(int n) {
    const double v = 2.0 / std::sin(kPi / n);
    const double r = std::round(v);
    if (std::abs(v - r) < 1e-12) return int(r) - 1;  // strict k < v with integer v
    return int(std::ceil(v)) - 1;
}

DiscretenessCertificate certify(const TriangleParams& p, double tol) {
    DiscretenessCertificate cert;
    cert.n = p.n;
    cert.t = p.t;
    cert.k_bound = certificate_k_bound(p.n);
    cert.min_margin = std::numeric_limits<double>::infinity();
    for (int jp = 1; jp <= p.n - 1; ++jp) {
        for (int j = 1; j <= p.n - 1; ++j) {
            for (int k = 1; k <= cert.k_bound; ++k) {
                if (jp == 1 && j == p.n - 1 && k == 1) continue;  // tangent pair
                CertificateEntry e{jp, j, k, rho(p, jp, j, k)};
                if (e.rho < cert.min_margin) {
                    cert.min_margin = e.rho;
                    cert.witness = e;
                }
                cert.entries.push_back(e);
            }
        }
    }
    cert.tangency = tangency_check(p, 0);
    const bool tangency_ok =
        cert.tangency.sphere_gap < tol && cert.tangency.point_on_spheres < std::sqrt(tol);
    if (cert.min_margin > tol && tangency_ok)
        cert.verdict = Verdict::Certified;
    else if (cert.min_margin >= -tol && tangency_ok)
        cert.verdict = Verdict::Boundary;
    else
        cert.verdict = Verdict::Failed;
    return cert;
}

std::vector<SweepRow> certify_sweep(int n, double t_min, double t_max, int grid, double tol) {
    if (grid < 1 || !(t_min > 0.0) || !(t_max >= t_min))
        throw std::invalid_argument("certify_sweep: bad grid or range");
    std::vector<SweepRow> rows;
    rows.reserve(grid);
    for (int i = 0; i < grid; ++i) {
        const double t = grid == 1 ? t_min : t_min + (t_max - t_min) * i / (grid - 1);
        const DiscretenessCertificate cert = certify(params_from_t(n, t), tol);
        SweepRow row;
        row.t = t;
        row.entries = cert.entries;
        row.verdict = cert.verdict;
        rows.push_back(std::move(row));
    }
    return rows;
}

double rho_root_bisect(int n, int jprime, int j, int k, double t_lo, double t_hi, double tol) {
    auto f = [&](double t) { return rho(params_from_t(n, t), jprime, j, k); };
    double flo = f(t_lo), fhi = f(t_hi);
    if (flo == 0.0) return t_lo;
    if (fhi == 0.0) return t_hi;
    if (flo * fhi > 0.0)
        throw std::domain_error("rho_root_bisect: no sign change over [t_lo, t_hi]");
    while (t_hi - t_lo > tol) {
        const double mid = 0.5 * (t_lo + t_hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            t_hi = mid;
        } else {
            t_lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (t_lo + t_hi);
}

}  // namespace chplane
