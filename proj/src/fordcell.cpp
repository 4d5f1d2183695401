#include "chplane/fordcell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "chplane/ellip.hpp"

namespace chplane {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct EdgeRegistry {
    std::map<EdgeLabel, int> index;
    std::vector<EdgeLabel>* edges;

    int get(int j, int k, bool prime) {
        EdgeLabel lbl{std::min(j, k), std::max(j, k), prime};
        auto it = index.find(lbl);
        if (it != index.end()) return it->second;
        const int id = int(edges->size());
        edges->push_back(lbl);
        index.emplace(lbl, id);
        return id;
    }
};

}  // namespace

std::string EdgeLabel::name() const {
    std::ostringstream os;
    os << (prime ? "e'" : "e") << "_{" << j << "," << k << "}";
    return os.str();
}

std::vector<std::vector<int>> CellComplex2::edge_faces() const {
    std::vector<std::vector<int>> out(edges.size());
    for (int f = 0; f < int(faces.size()); ++f)
        for (int e : faces[f].cycle) out[e].push_back(f);
    return out;
}

std::set<std::pair<int, int>> CellComplex2::face_adjacency() const {
    std::set<std::pair<int, int>> adj;
    for (const auto& fl : edge_faces()) {
        if (fl.size() == 2 && fl[0] != fl[1])
            adj.insert({std::min(fl[0], fl[1]), std::max(fl[0], fl[1])});
    }
    return adj;
}

CellComplex2 build_ideal_boundary_complex(int n, GluingVariant variant) {
    if (n < 3) throw std::invalid_argument("build_ideal_boundary_complex: n >= 3 required");
    CellComplex2 cx;
    cx.n = n;
    EdgeRegistry reg{{}, &cx.edges};

    const auto face = [&](const std::string& label, int sphere, const std::vector<int>& cycle) {
        cx.faces.push_back({label, sphere, cycle});
    };

    // f_1: e_{1,n-1}, e'_{1,2..n-2}, e'_{1,n-1}, e_{1,2..n-2}
    {
        std::vector<int> cyc;
        cyc.push_back(reg.get(1, n - 1, false));
        for (int k = 2; k <= n - 2; ++k) cyc.push_back(reg.get(1, k, true));
        cyc.push_back(reg.get(1, n - 1, true));
        for (int k = 2; k <= n - 2; ++k) cyc.push_back(reg.get(1, k, false));
        face("f_1", 1, cyc);
    }
    // f_{n-1}: e'_{1,n-1}, e'_{n-1,n-2..2}, e_{1,n-1}, e_{n-1,n-2..2}.  The
    // other admissible gluing of the two big polygons attaches f_{n-1} with
    // its primed and unprimed edges exchanged.
    {
        const bool swap = variant == GluingVariant::Reversed;
        std::vector<int> cyc;
        cyc.push_back(reg.get(1, n - 1, !swap));
        for (int k = n - 2; k >= 2; --k) cyc.push_back(reg.get(n - 1, k, !swap));
        cyc.push_back(reg.get(1, n - 1, swap));
        for (int k = n - 2; k >= 2; --k) cyc.push_back(reg.get(n - 1, k, swap));
        face("f_" + std::to_string(n - 1), n - 1, cyc);
    }
    if (n == 4) {
        face("f_2", 2, {reg.get(1, 2, false), reg.get(3, 2, false)});
        face("f'_2", 2, {reg.get(1, 2, true), reg.get(3, 2, true)});
    } else if (n >= 5) {
        face("f_2", 2, {reg.get(1, 2, false), reg.get(n - 1, 2, false), reg.get(2, 3, false)});
        face("f'_2", 2, {reg.get(1, 2, true), reg.get(n - 1, 2, true), reg.get(2, 3, true)});
        face("f_" + std::to_string(n - 2), n - 2,
             {reg.get(n - 1, n - 2, false), reg.get(1, n - 2, false), reg.get(n - 3, n - 2, false)});
        face("f'_" + std::to_string(n - 2), n - 2,
             {reg.get(n - 1, n - 2, true), reg.get(1, n - 2, true), reg.get(n - 3, n - 2, true)});
    }
    for (int k = 3; k <= n - 3; ++k) {
        face("f_" + std::to_string(k), k,
             {reg.get(1, k, false), reg.get(k - 1, k, false), reg.get(n - 1, k, false),
              reg.get(k, k + 1, false)});
        face("f'_" + std::to_string(k), k,
             {reg.get(1, k, true), reg.get(k - 1, k, true), reg.get(n - 1, k, true),
              reg.get(k, k + 1, true)});
    }

    // every edge must border exactly two faces
    for (int e = 0; e < int(cx.edges.size()); ++e) {
        int count = 0;
        for (const auto& f : cx.faces) count += int(std::count(f.cycle.begin(), f.cycle.end(), e));
        if (count != 2)
            throw std::logic_error("cell complex: edge " + cx.edges[e].name() +
                                   " borders " + std::to_string(count) + " faces");
    }

    // Vertices: orbits of the corner rotation d |-> alpha(phi(d)) on darts
    // (face, slot), where phi advances along the face cycle and alpha swaps
    // the two darts carrying the same edge.
    std::vector<std::pair<int, int>> darts;
    std::map<std::pair<int, int>, int> dart_id;
    for (int f = 0; f < int(cx.faces.size()); ++f)
        for (int s = 0; s < int(cx.faces[f].cycle.size()); ++s) {
            dart_id[{f, s}] = int(darts.size());
            darts.push_back({f, s});
        }
    std::vector<int> alpha(darts.size(), -1);
    {
        std::map<int, std::vector<int>> by_edge;
        for (int d = 0; d < int(darts.size()); ++d)
            by_edge[cx.faces[darts[d].first].cycle[darts[d].second]].push_back(d);
        for (auto& [e, ds] : by_edge) {
            alpha[ds[0]] = ds[1];
            alpha[ds[1]] = ds[0];
        }
    }
    const auto phi = [&](int d) {
        auto [f, s] = darts[d];
        return dart_id[{f, (s + 1) % int(cx.faces[f].cycle.size())}];
    };
    std::vector<bool> seen(darts.size(), false);
    for (int d0 = 0; d0 < int(darts.size()); ++d0) {
        if (seen[d0]) continue;
        std::vector<std::pair<int, int>> orbit;
        int d = d0;
        do {
            seen[d] = true;
            orbit.push_back(darts[d]);
            d = alpha[phi(d)];
        } while (d != d0);
        cx.vertices.push_back(std::move(orbit));
    }
    return cx;
}

CellComplex3 cone_complex(const CellComplex2& base) {
    CellComplex3 cone;
    cone.base = base;
    cone.apex = "[0,0,1]";
    for (int f = 0; f < int(base.faces.size()); ++f) cone.sides.push_back(f);
    return cone;
}

GroupWord GroupWord::conjugated_b_power(int k, int j) {
    GroupWord w;
    if (k != 0) w.letters.push_back({'A', k});
    if (j != 0) w.letters.push_back({'B', j});
    if (k != 0) w.letters.push_back({'A', -k});
    return w;
}

GroupWord GroupWord::operator*(const GroupWord& rhs) const {
    GroupWord w;
    w.letters = letters;
    w.letters.insert(w.letters.end(), rhs.letters.begin(), rhs.letters.end());
    return w;
}

GroupWord GroupWord::reduced(int n) const {
    std::vector<std::pair<char, int>> out;
    for (auto [c, e] : letters) {
        if (c == 'B') e = ((e % n) + n) % n;
        if (e == 0) continue;
        out.push_back({c, e});
        while (out.size() >= 2) {
            auto& a = out[out.size() - 2];
            auto& b = out.back();
            if (a.first != b.first) break;
            a.second += b.second;
            if (a.first == 'B') a.second = ((a.second % n) + n) % n;
            out.pop_back();
            if (a.second == 0) out.pop_back();
        }
    }
    GroupWord w;
    w.letters = std::move(out);
    return w;
}

std::string GroupWord::str() const {
    if (letters.empty()) return "1";
    std::ostringstream os;
    for (auto [c, e] : letters) {
        os << c;
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

std::vector<RidgeCycle> ridge_cycles(int n) {
    if (n < 3) throw std::invalid_argument("ridge_cycles: n >= 3 required");
    std::vector<RidgeCycle> out;
    const auto bpow = [&](int j) { return GroupWord::conjugated_b_power(0, j); };
    for (int j = 2; j <= n - 1; ++j) {
        RidgeCycle rc;
        std::ostringstream os;
        os << "ridge triangle j=" << j << ": I_{-1}^I_{-" << j << "} -> I_{1}^I_{-" << (j - 1)
           << "} -> I_{" << j << "}^I_{" << (j - 1) << "} -> start";
        rc.description = os.str();
        rc.transitions = {bpow(-1), bpow(-(j - 1)), bpow(j)};
        GroupWord total;
        for (auto it = rc.transitions.rbegin(); it != rc.transitions.rend(); ++it)
            total = total * *it;
        rc.reduces_to_identity = total.is_identity(n);
        out.push_back(std::move(rc));
    }
    for (int j = 1; j <= n - 3; ++j) {
        const struct {
            const char* what;
            int w1, w2, w3;  // identity check: B^{w3}^{-1} after B^{w2} B^{w1}
        } rels[] = {
            {"ideal vertex (top path)", -1, j + 1, j},
            {"ideal vertex (left path)", j + 1, -1, j},
            {"ideal vertex (right path)", j + 2, -1, j + 1},
        };
        for (const auto& r : rels) {
            RidgeCycle rc;
            std::ostringstream os;
            os << r.what << " j=" << j;
            rc.description = os.str();
            rc.transitions = {bpow(r.w1), bpow(r.w2), bpow(-r.w3)};
            GroupWord total;
            for (auto it = rc.transitions.rbegin(); it != rc.transitions.rend(); ++it)
                total = total * *it;
            rc.reduces_to_identity = total.is_identity(n);
            out.push_back(std::move(rc));
        }
    }
    // tangency orbit: A B^{-1} A^{-1} conjugates p_{AB} to p_{A (AB) A^{-1}}
    {
        RidgeCycle rc;
        rc.description = "tangency chain: (A B^-1 A^-1)(AB)(A B^-1 A^-1)^-1 = A(AB)A^-1";
        GroupWord g = GroupWord::conjugated_b_power(1, -1);
        GroupWord ab;
        ab.letters = {{'A', 1}, {'B', 1}};
        GroupWord ginv = GroupWord::conjugated_b_power(1, 1);
        GroupWord lhs = g * ab * ginv;
        GroupWord rhs_inv;  // (A (AB) A^-1)^{-1} = A B^{-1} A^{-2}
        rhs_inv.letters = {{'A', 1}, {'B', -1}, {'A', -2}};
        rc.transitions = {g, ab, ginv};
        rc.reduces_to_identity = (lhs * rhs_inv).is_identity(n);
        out.push_back(std::move(rc));
    }
    return out;
}

namespace {

struct SampleData {
    Eigen::Vector3d pos;              // Heisenberg-model embedding (Re z, Im z, t)
    std::vector<double> residuals;    // against the other spheres, by index
    bool all_plus = false;
};

// single-linkage components with link threshold h
std::vector<int> cluster(const std::vector<Eigen::Vector3d>& pts, double h) {
    const int m = int(pts.size());
    std::vector<int> parent(m);
    for (int i = 0; i < m; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    const double h2 = h * h;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if ((pts[i] - pts[j]).squaredNorm() <= h2) parent[find(i)] = find(j);
    std::vector<int> label(m);
    std::map<int, int> relabel;
    for (int i = 0; i < m; ++i) {
        const int r = find(i);
        auto it = relabel.find(r);
        if (it == relabel.end()) it = relabel.emplace(r, int(relabel.size())).first;
        label[i] = it->second;
    }
    return label;
}

}  // namespace

ProbeReport numeric_cell_probe(int n, const ProbeOptions& opts) {
    if (n < 3) throw std::invalid_argument("numeric_cell_probe: n >= 3 required");
    ProbeReport report;
    report.n = n;
    report.samples_per_sphere = opts.samples;
    const CellComplex2 cx = build_ideal_boundary_complex(n);

    const TorusPoint q{Complex(-1.0, -2.0), Complex(std::sqrt(2.0))};
    const Isometry m0 = h2_as_isometry() * torus_point_translation(q);
    const Isometry m0_inv = m0.inverse();
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<double> thetas(n);  // 1-based sphere angles
    for (int k = 1; k <= n - 1; ++k) thetas[k] = kTwoPi * k / n;

    struct Component {
        int sphere;
        std::vector<int> samples;  // indices into the per-sphere sample list
    };
    std::vector<std::vector<SampleData>> sphere_samples(n);
    std::vector<Component> components;
    std::vector<std::vector<int>> comp_of_sphere(n);

    for (int k = 1; k <= n - 1; ++k) {
        // the k-th sphere is the Cygan sphere centred at H2 T_q C_q(theta_k)
        const HoroPoint center = horo_apply(m0, horo_from_lift(circle_point(q, thetas[k]).lift));
        const double radius = standard_sphere_radius(thetas[k], q);
        auto& samples = sphere_samples[k];
        samples.reserve(opts.samples);
        for (int s = 0; s < opts.samples; ++s) {
            GeoCoord gc;
            gc.alpha = (unif(rng) - 0.5) * std::numbers::pi;
            gc.beta = unif(rng) * std::numbers::pi;
            gc.omega = (unif(rng) < 0.5 ? 1.0 : -1.0) * std::sqrt(std::cos(gc.alpha));
            gc.r = radius;
            const HeisenbergPoint b =
                heis_mul(center.boundary(), geographic_horo(gc).boundary());
            const HoroPoint p{b.z, b.t, 0.0};
            const ProjectivePoint ball = cayley_transform(m0_inv.apply(horo_point(p)));
            SampleData sd;
            sd.pos << p.z.real(), p.z.imag(), p.t;
            sd.residuals.resize(n);
            sd.all_plus = true;
            for (int j = 1; j <= n - 1; ++j) {
                if (j == k) continue;
                sd.residuals[j] = standard_sphere_side(ball, thetas[j]);
                sd.all_plus = sd.all_plus && sd.residuals[j] > 0.0;
            }
            std::string pat;
            for (int j = 1; j <= n - 1; ++j)
                if (j != k) pat += (std::abs(sd.residuals[j]) <= opts.zero_band)
                                       ? '0'
                                       : (sd.residuals[j] > 0 ? '+' : '-');
            ++report.pattern_census["k=" + std::to_string(k) + ":" + pat];
            samples.push_back(std::move(sd));
        }

        // all-plus components on this sphere
        std::vector<int> plus_ids;
        std::vector<Eigen::Vector3d> plus_pts;
        for (int i = 0; i < int(samples.size()); ++i)
            if (samples[i].all_plus) {
                plus_ids.push_back(i);
                plus_pts.push_back(samples[i].pos);
            }
        if (plus_pts.empty()) continue;
        // adaptive link threshold from nearest-neighbour spacing
        std::vector<double> nn(plus_pts.size(), 1e9);
        for (size_t i = 0; i < plus_pts.size(); ++i)
            for (size_t j = 0; j < plus_pts.size(); ++j)
                if (i != j) nn[i] = std::min(nn[i], (plus_pts[i] - plus_pts[j]).norm());
        std::vector<double> nn_sorted = nn;
        std::sort(nn_sorted.begin(), nn_sorted.end());
        const double h = 5.0 * nn_sorted[nn_sorted.size() * 9 / 10];
        const std::vector<int> label = cluster(plus_pts, h);
        const int ncomp = 1 + *std::max_element(label.begin(), label.end());
        for (int c = 0; c < ncomp; ++c) {
            Component comp;
            comp.sphere = k;
            for (size_t i = 0; i < plus_ids.size(); ++i)
                if (label[i] == c) comp.samples.push_back(plus_ids[i]);
            if (int(comp.samples.size()) < opts.noise_threshold) continue;
            comp_of_sphere[k].push_back(int(components.size()));
            components.push_back(std::move(comp));
        }
    }

    // touching circles per component
    const double touch_band = opts.touch_band;
    for (const Component& comp : components) {
        ProbeFace pf;
        pf.sphere = comp.sphere;
        pf.sample_count = int(comp.samples.size());
        for (int j = 1; j <= n - 1; ++j) {
            if (j == comp.sphere) continue;
            double mn = 1e9;
            for (int i : comp.samples)
                mn = std::min(mn, std::abs(sphere_samples[comp.sphere][i].residuals[j]));
            if (mn <= touch_band)
                pf.touching_circles.insert({std::min(j, comp.sphere), std::max(j, comp.sphere)});
        }
        report.faces.push_back(std::move(pf));
    }

    // adjacency: two components are adjacent when their near-circle samples meet
    for (int a = 0; a < int(components.size()); ++a) {
        for (int b = a + 1; b < int(components.size()); ++b) {
            const int ka = components[a].sphere, kb = components[b].sphere;
            if (ka == kb) continue;
            const auto key = std::make_pair(std::min(ka, kb), std::max(ka, kb));
            if (!report.faces[a].touching_circles.count(key) ||
                !report.faces[b].touching_circles.count(key))
                continue;
            double best = 1e9;
            for (int i : components[a].samples) {
                const auto& sa = sphere_samples[ka][i];
                if (std::abs(sa.residuals[kb]) > touch_band) continue;
                for (int j : components[b].samples) {
                    const auto& sb = sphere_samples[kb][j];
                    if (std::abs(sb.residuals[ka]) > touch_band) continue;
                    best = std::min(best, (sa.pos - sb.pos).norm());
                }
            }
            if (best < 0.1) report.face_adjacency.insert({a, b});
        }
    }

    // compare against the combinatorial complex
    report.matches_complex = true;
    std::ostringstream why;
    for (int k = 1; k <= n - 1; ++k) {
        int expected = 0;
        for (const auto& f : cx.faces) expected += (f.sphere == k);
        if (int(comp_of_sphere[k].size()) != expected) {
            report.matches_complex = false;
            why << "sphere " << k << ": " << comp_of_sphere[k].size() << " components, expected "
                << expected << "; ";
        }
    }
    if (report.matches_complex) {
        // circle sets per sphere must match the face edge sets (as multisets)
        for (int k = 1; k <= n - 1; ++k) {
            std::multiset<std::set<std::pair<int, int>>> want, got;
            for (const auto& f : cx.faces)
                if (f.sphere == k) {
                    std::set<std::pair<int, int>> circles;
                    for (int e : f.cycle)
                        circles.insert({cx.edges[e].j, cx.edges[e].k});
                    want.insert(std::move(circles));
                }
            for (int c : comp_of_sphere[k]) got.insert(report.faces[c].touching_circles);
            if (want != got) {
                report.matches_complex = false;
                why << "sphere " << k << ": circle sets differ; ";
            }
        }
    }
    if (report.matches_complex) {
        // the recovered adjacency graph must match the combinatorial one under
        // some sphere-preserving bijection (at most two faces per sphere)
        const auto want_adj = cx.face_adjacency();
        std::vector<int> perm(components.size());
        std::vector<std::vector<int>> faces_of_sphere(n);
        for (int f = 0; f < int(cx.faces.size()); ++f)
            faces_of_sphere[cx.faces[f].sphere].push_back(f);
        bool any = false;
        const int nswap = 1 << std::max(0, n - 3);
        for (int mask = 0; mask < nswap && !any; ++mask) {
            for (int k = 1; k <= n - 1; ++k) {
                auto comps = comp_of_sphere[k];
                if (k >= 2 && k <= n - 2 && comps.size() == 2 && ((mask >> (k - 2)) & 1))
                    std::swap(comps[0], comps[1]);
                for (size_t i = 0; i < comps.size(); ++i) perm[comps[i]] = faces_of_sphere[k][i];
            }
            std::set<std::pair<int, int>> mapped;
            for (const auto& [a, b] : report.face_adjacency) {
                mapped.insert({std::min(perm[a], perm[b]), std::max(perm[a], perm[b])});
            }
            any = (mapped == want_adj);
        }
        if (!any) {
            report.matches_complex = false;
            why << "face adjacency graph differs; ";
        }
    }
    report.mismatch_reason = why.str();
    return report;
}

}  // namespace chplane
