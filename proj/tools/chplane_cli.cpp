// Command-line frontend: classification queries, Cygan/Cartan evaluations,
// intersection and foliation CSV emission, Ford-cell JSON and triangle-group
// certification and sweeps.
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "chplane/fordcell.hpp"
#include "chplane/isect.hpp"
#include "chplane/trigroup.hpp"

using namespace chplane;
using json = nlohmann::json;

namespace {

// shortest round-trip decimal formatting
std::string fmt(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

struct Output {
    std::string path;
    std::ostream& stream() {
        if (path.empty()) return std::cout;
        if (!file.is_open()) file.open(path);
        return file;
    }
    std::ofstream file;
};

Mat3 matrix_from_entries(const std::vector<double>& v) {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = Complex(v[2 * i], v[2 * i + 1]);
    return m;
}

FormKind parse_form(const std::string& s) {
    if (s == "ball") return FormKind::Ball;
    if (s == "siegel") return FormKind::Siegel;
    throw CLI::ValidationError("--form must be ball or siegel");
}

const char* kind_name(IsometryKind k) {
    switch (k) {
        case IsometryKind::Loxodromic: return "Loxodromic";
        case IsometryKind::RegularElliptic: return "RegularElliptic";
        default: return "Boundary";
    }
}

const char* refined_name(RefinedKind k) {
    switch (k) {
        case RefinedKind::Unipotent: return "Unipotent";
        case RefinedKind::ScrewParabolic: return "ScrewParabolic";
        case RefinedKind::SpecialElliptic: return "SpecialElliptic";
        default: return "Identity";
    }
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "Certified";
        case Verdict::Failed: return "Failed";
        default: return "Boundary";
    }
}

// Angles arrive in radians; --frac-pi p q pairs override them as p*pi/q.
std::vector<double> resolve_angles(std::vector<double> radians,
                                   const std::vector<int>& fracpi, size_t expected) {
    if (!fracpi.empty()) {
        if (fracpi.size() % 2 != 0) throw CLI::ValidationError("--frac-pi needs p q pairs");
        std::vector<double> out;
        for (size_t i = 0; i + 1 < fracpi.size(); i += 2) {
            if (fracpi[i + 1] == 0) throw CLI::ValidationError("--frac-pi: q must be nonzero");
            out.push_back(M_PI * fracpi[i] / fracpi[i + 1]);
        }
        if (out.size() != expected)
            throw CLI::ValidationError("--frac-pi must supply every angle");
        return out;
    }
    if (radians.size() != expected) throw CLI::ValidationError("wrong number of angles");
    return radians;
}

void emit_crossing_rows(std::ostream& os, const Crossing& cr) {
    for (const CrossingArc& arc : cr.arcs) {
        for (const XY& p : arc.samples) {
            const DiskCoords dc = disk_coords_from_xy(p.x, p.y);
            const WCoeffs w = w_coefficients(cr.theta1, cr.theta2);
            const QCoeffs q = q_coefficients(cr.theta1, cr.theta2, cr.theta3);
            os << fmt(cr.theta3) << ',' << arc.eps << ',' << arc.tau << ',' << arc.sigma << ','
               << fmt(dc.psi1) << ',' << fmt(dc.psi2) << ',' << fmt(p.x) << ',' << fmt(p.y) << ','
               << fmt(w_eval(w, p.x, p.y)) << ',' << fmt(q_eval(q, p.x, p.y)) << '\n';
        }
    }
}

json certificate_json(const DiscretenessCertificate& cert) {
    json entries = json::array();
    for (const CertificateEntry& e : cert.entries)
        entries.push_back({{"jprime", e.jprime}, {"j", e.j}, {"k", e.k}, {"rho", e.rho}});
    json j{{"n", cert.n},
           {"t", cert.t},
           {"k_bound", cert.k_bound},
           {"entries", entries},
           {"tangency_residual",
            std::max(cert.tangency.sphere_gap, cert.tangency.point_on_spheres)},
           {"verdict", verdict_name(cert.verdict)},
           {"min_margin", cert.min_margin}};
    if (cert.witness)
        j["witness"] = {{"jprime", cert.witness->jprime},
                        {"j", cert.witness->j},
                        {"k", cert.witness->k},
                        {"rho", cert.witness->rho}};
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for the complex hyperbolic plane"};
    app.require_subcommand(1);

    double tol = kDefaultTol;
    int grid = 64;
    std::string format = "csv";
    Output out;
    std::vector<int> fracpi;
    app.add_option("--tol", tol, "classification tolerance")->check(CLI::PositiveNumber);
    app.add_option("--grid", grid, "grid resolution")->check(CLI::Range(2, 1 << 20));
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out.path, "output file (default stdout)");
    app.add_option("--frac-pi", fracpi,
                   "angle arguments as p q pairs meaning p*pi/q (exact thresholds)");

    // classify
    auto* classify = app.add_subcommand("classify", "classify a 3x3 complex matrix");
    std::string form_str = "siegel";
    std::vector<double> entries;
    classify->add_option("--form", form_str, "ball or siegel");
    classify->add_option("entries", entries, "18 reals: row-major re im pairs")
        ->expected(18);

    // cartan
    auto* cartan = app.add_subcommand("cartan", "Cartan angular invariant of three lifts");
    std::string cartan_form = "siegel";
    std::vector<double> cartan_entries;
    cartan->add_option("--form", cartan_form, "ball or siegel");
    cartan->add_option("lifts", cartan_entries, "18 reals: three lifts as re im triples")
        ->expected(18);

    // cygan
    auto* cygan = app.add_subcommand("cygan", "extended Cygan distance of two horo points");
    std::vector<double> cygan_entries;
    cygan->add_option("points", cygan_entries, "8 reals: zre zim t u for each point")
        ->expected(8);

    // sphere
    auto* sphere = app.add_subcommand("sphere", "isometric sphere of a Siegel matrix");
    std::vector<double> sphere_entries;
    sphere->add_option("entries", sphere_entries, "18 reals: row-major re im pairs")
        ->expected(18);

    // intersect2
    auto* intersect2 = app.add_subcommand("intersect2", "pairwise intersection coefficients");
    std::vector<double> i2_angles;
    intersect2->add_option("angles", i2_angles, "theta1 theta2 in radians");

    // intersect3
    auto* intersect3 = app.add_subcommand("intersect3", "triple intersection crossing CSV");
    std::vector<double> i3_angles;
    intersect3->add_option("angles", i3_angles, "theta1 theta2 theta3 in radians");

    // foliation
    auto* foliation = app.add_subcommand("foliation", "foliation leaves CSV");
    std::vector<double> fol_angles;
    foliation->add_option("angles", fol_angles, "theta1 theta2 in radians");

    // ford
    auto* ford = app.add_subcommand("ford", "Ford-domain cell complex JSON");
    int ford_n = 4;
    ford->add_option("n", ford_n, "order of the elliptic element")->required();

    // certify
    auto* certify_cmd = app.add_subcommand("certify", "discreteness certificate");
    int cert_n = 3;
    double cert_t = -1.0, cert_a = -1.0;
    certify_cmd->add_option("n", cert_n, "triangle group order")->required();
    certify_cmd->add_option("--t", cert_t, "t = tan(A/2)");
    certify_cmd->add_option("--A", cert_a, "angular invariant in (0, pi)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "rho margins over a t grid, CSV");
    int sweep_n = 3;
    double t_min = 0.1, t_max = 3.0;
    sweep->add_option("n", sweep_n, "triangle group order")->required();
    sweep->add_option("--t-min", t_min, "grid start");
    sweep->add_option("--t-max", t_max, "grid end");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*classify) {
            const FormKind form = parse_form(form_str);
            Isometry g = Isometry::identity(form);
            try {
                g = Isometry(matrix_from_entries(entries), form);
            } catch (const std::invalid_argument& e) {
                const Mat3 m = matrix_from_entries(entries);
                const Mat3& h = HermitianForm{form}.matrix();
                std::cerr << "not in SU(H): " << e.what()
                          << "; unitarity residual = " << (m.adjoint() * h * m - h).norm()
                          << ", det = " << m.determinant() << "\n";
                return 1;
            }
            const IsometryClass c = classify_isometry(g, tol);
            std::ostream& os = out.stream();
            os << kind_name(c.kind);
            if (c.refined) os << " / " << refined_name(*c.refined);
            os << ", f = " << fmt(c.f_value) << "\n";
            Eigen::ComplexEigenSolver<Mat3> es(g.m);
            os << "eigenvalues:";
            for (int i = 0; i < 3; ++i)
                os << ' ' << fmt(es.eigenvalues()(i).real()) << (es.eigenvalues()(i).imag() < 0 ? "-" : "+")
                   << fmt(std::abs(es.eigenvalues()(i).imag())) << 'i';
            os << "\n";
            if (c.kind == IsometryKind::RegularElliptic) {
                // fixed point: negative eigenvector
                for (int i = 0; i < 3; ++i) {
                    const Vec3 v = es.eigenvectors().col(i);
                    if (hermitian_product(v, v, form).real() < 0.0) {
                        const Vec3 nv = v / v(2);
                        os << "fixed point: [" << fmt(nv(0).real()) << (nv(0).imag() < 0 ? "-" : "+")
                           << fmt(std::abs(nv(0).imag())) << "i, " << fmt(nv(1).real())
                           << (nv(1).imag() < 0 ? "-" : "+") << fmt(std::abs(nv(1).imag()))
                           << "i, 1]\n";
                        break;
                    }
                }
            }
        } else if (*cartan) {
            const FormKind form = parse_form(cartan_form);
            std::vector<ProjectivePoint> pts;
            for (int p = 0; p < 3; ++p) {
                Vec3 v;
                for (int i = 0; i < 3; ++i)
                    v(i) = Complex(cartan_entries[6 * p + 2 * i], cartan_entries[6 * p + 2 * i + 1]);
                pts.emplace_back(v, form);
            }
            out.stream() << fmt(cartan_invariant(pts[0], pts[1], pts[2], tol)) << "\n";
        } else if (*cygan) {
            const HoroPoint p{Complex(cygan_entries[0], cygan_entries[1]), cygan_entries[2],
                              cygan_entries[3]};
            const HoroPoint q{Complex(cygan_entries[4], cygan_entries[5]), cygan_entries[6],
                              cygan_entries[7]};
            out.stream() << fmt(cygan_distance(p, q)) << "\n";
        } else if (*sphere) {
            const Isometry g(matrix_from_entries(sphere_entries), FormKind::Siegel);
            const CyganSphere s = isometric_sphere(g, tol);
            if (format == "json") {
                out.stream() << json{{"center_z_re", s.center.z.real()},
                                     {"center_z_im", s.center.z.imag()},
                                     {"center_t", s.center.t},
                                     {"radius", s.radius}}
                                    .dump(2)
                             << "\n";
            } else {
                std::ostream& os = out.stream();
                os << "center_z_re,center_z_im,center_t,radius\n";
                os << fmt(s.center.z.real()) << ',' << fmt(s.center.z.imag()) << ','
                   << fmt(s.center.t) << ',' << fmt(s.radius) << "\n";
            }
        } else if (*intersect2) {
            const auto a = resolve_angles(i2_angles, fracpi, 2);
            const WCoeffs w = w_coefficients(a[0], a[1]);
            std::ostream& os = out.stream();
            os << "theta1,theta2,c22,c20,c02,c11,c00\n";
            os << fmt(w.theta1) << ',' << fmt(w.theta2) << ',' << fmt(w.c22) << ',' << fmt(w.c20)
               << ',' << fmt(w.c02) << ',' << fmt(w.c11) << ',' << fmt(w.c00) << "\n";
        } else if (*intersect3) {
            const auto a = resolve_angles(i3_angles, fracpi, 3);
            const Crossing cr = crossing_points(a[0], a[1], a[2], grid, tol);
            std::ostream& os = out.stream();
            os << "theta3,eps,tau,sigma,psi1,psi2,X,Y,W,Q\n";
            emit_crossing_rows(os, cr);
        } else if (*foliation) {
            const auto a = resolve_angles(fol_angles, fracpi, 2);
            const std::vector<Leaf> leaves = foliation_leaves(a[0], a[1], grid, 48, tol);
            std::ostream& os = out.stream();
            os << "theta3,eps,tau,sigma,psi1,psi2,X,Y,W,Q\n";
            for (const Leaf& leaf : leaves) emit_crossing_rows(os, leaf.locus);
        } else if (*ford) {
            const CellComplex2 cx = build_ideal_boundary_complex(ford_n);
            json faces = json::array();
            for (const FacePolygon& f : cx.faces) {
                json edges = json::array();
                for (int e : f.cycle) edges.push_back(cx.edges[e].name());
                faces.push_back({{"label", f.label}, {"edges", edges}});
            }
            json edges = json::array();
            const auto ef = cx.edge_faces();
            for (size_t e = 0; e < cx.edges.size(); ++e) {
                json fl = json::array();
                for (int f : ef[e]) fl.push_back(cx.faces[f].label);
                edges.push_back({{"label", cx.edges[e].name()}, {"faces", fl}});
            }
            json vertices = json::array();
            for (const auto& orbit : cx.vertices) {
                json corners = json::array();
                for (const auto& [f, slot] : orbit)
                    corners.push_back(cx.faces[f].label + "#" + std::to_string(slot));
                vertices.push_back(corners);
            }
            out.stream() << json{{"n", cx.n},
                                 {"faces", faces},
                                 {"edges", edges},
                                 {"vertices", vertices},
                                 {"euler", cx.euler()}}
                                .dump(2)
                         << "\n";
        } else if (*certify_cmd) {
            TriangleParams p;
            if (cert_t > 0.0) {
                p = params_from_t(cert_n, cert_t);
            } else if (cert_a > 0.0) {
                p = params_from_angle(cert_n, cert_a);
            } else if (!fracpi.empty()) {
                const auto a = resolve_angles({}, fracpi, 1);
                p = params_from_angle(cert_n, a[0]);
            } else {
                std::cerr << "certify: provide --t or --A\n";
                return 1;
            }
            const DiscretenessCertificate cert = certify(p, tol);
            json j = certificate_json(cert);
            if (wa_type(p).kind == IsometryKind::RegularElliptic) j["wa"] = "RegularElliptic";
            else if (wa_type(p).kind == IsometryKind::Loxodromic) j["wa"] = "Loxodromic";
            else j["wa"] = "Boundary";
            out.stream() << j.dump(2) << "\n";
            switch (cert.verdict) {
                case Verdict::Certified: return 0;
                case Verdict::Failed: return 2;
                case Verdict::Boundary: return 3;
            }
        } else if (*sweep) {
            const auto rows = certify_sweep(sweep_n, t_min, t_max, grid, tol);
            std::ostream& os = out.stream();
            os << "n,t,jprime,j,k,rho\n";
            for (const SweepRow& row : rows)
                for (const CertificateEntry& e : row.entries)
                    os << sweep_n << ',' << fmt(row.t) << ',' << e.jprime << ',' << e.j << ','
                       << e.k << ',' << fmt(e.rho) << "\n";
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
