// Combinatorial Ford-domain cell structure: the 2-sphere complex of the
// boundary of the ideal boundary (polygons f_k / f'_k glued along the edges
// e_{j,k} / e'_{j,k}), the cone 3-complex over it, ridge-cycle words in the
// abstract group <A, B | B^n>, and a Monte-Carlo probe that recovers the face
// structure from sphere-side signs in the standard model.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "chplane/isect.hpp"

namespace chplane {

struct EdgeLabel {
    int j = 0, k = 0;   // sphere indices of the circle the edge lies on
    bool prime = false;

    std::string name() const;
    bool operator<(const EdgeLabel& o) const {
        return std::tie(j, k, prime) < std::tie(o.j, o.k, o.prime);
    }
    bool operator==(const EdgeLabel& o) const {
        return j == o.j && k == o.k && prime == o.prime;
    }
};

struct FacePolygon {
    std::string label;        // f_k or f'_k
    int sphere = 0;           // subscript k: the sphere the face lies on
    std::vector<int> cycle;   // edge indices, counterclockwise boundary order
};

struct CellComplex2 {
    int n = 0;
    std::vector<EdgeLabel> edges;
    std::vector<FacePolygon> faces;
    // vertices as orbits of polygon corners; each corner is (face, slot)
    std::vector<std::vector<std::pair<int, int>>> vertices;

    int euler() const {
        return int(vertices.size()) - int(edges.size()) + int(faces.size());
    }
    // every edge index -> the (exactly two) faces using it
    std::vector<std::vector<int>> edge_faces() const;
    // simple face-adjacency graph (face index pairs sharing an edge)
    std::set<std::pair<int, int>> face_adjacency() const;
};

enum class GluingVariant { Standard, Reversed };

// Theorem-driven face list; Reversed flips the f_{n-1} boundary cycle (the
// other admissible gluing).  Vertices are synthesised from the edge gluing.
CellComplex2 build_ideal_boundary_complex(int n, GluingVariant variant = GluingVariant::Standard);

struct CellComplex3 {
    CellComplex2 base;
    std::string apex;                 // the interior point [0,0,1]
    std::vector<int> sides;           // one 3-cell per base face (face index)
};

CellComplex3 cone_complex(const CellComplex2& base);

// Word in <A, B | B^n = 1>: alternating letters with exponents.
struct GroupWord {
    std::vector<std::pair<char, int>> letters;  // ('A' or 'B', exponent)

    static GroupWord conjugated_b_power(int k, int j);  // A^k B^j A^-k
    GroupWord operator*(const GroupWord& rhs) const;
    GroupWord reduced(int n) const;  // free reduction with B^n = 1
    bool is_identity(int n) const { return reduced(n).letters.empty(); }
    std::string str() const;
};

struct RidgeCycle {
    std::string description;
    std::vector<GroupWord> transitions;
    bool reduces_to_identity = false;
};

// The triangle ridge cycles (j = 2..n-1), the ideal-vertex cycle relations
// and the tangency-orbit conjugation identity, all verified as words.
std::vector<RidgeCycle> ridge_cycles(int n);

struct ProbeFace {
    int sphere = 0;
    int sample_count = 0;
    std::set<std::pair<int, int>> touching_circles;  // unordered index pairs
};

struct ProbeReport {
    int n = 0;
    int samples_per_sphere = 0;
    std::vector<ProbeFace> faces;                     // one per all-plus component
    std::set<std::pair<int, int>> face_adjacency;     // indices into faces
    std::map<std::string, int> pattern_census;        // sign pattern -> count
    bool matches_complex = false;
    std::string mismatch_reason;
};

struct ProbeOptions {
    int samples = 10000;
    std::uint64_t seed = 20250810;
    int noise_threshold = 10;      // patterns below this are boundary blur
    double zero_band = 5e-3;       // |residual| band treated as "on the circle"
    double touch_band = 0.2;       // face-to-circle residual threshold
};

// Samples the ideal boundary of each I(2 pi k / n), classifies samples by the
// side signs against the other spheres, recovers the all-plus components and
// their adjacency, and compares against build_ideal_boundary_complex.
ProbeReport numeric_cell_probe(int n, const ProbeOptions& opts = {});

}  // namespace chplane
