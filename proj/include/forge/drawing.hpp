#ifndef FORGE_DRAWING_HPP
#define FORGE_DRAWING_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace forge {

/// An edge of K_n, endpoints stored as 0-based real vertex ids with a < b.
struct Edge {
    int a = 0;
    int b = 0;

    bool has(int v) const { return a == v || b == v; }
    bool shares_endpoint(const Edge& o) const { return has(o.a) || has(o.b); }
    auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// Index of edge {a, b} in the lexicographic enumeration of K_n edges.
inline int edge_index(const Edge& e, int n) { return e.a * n - e.a * (e.a + 1) / 2 + (e.b - e.a - 1); }

struct Dart {
    int twin = -1;
    int next = -1;   // clockwise successor around origin
    int origin = -1;
    Edge edge;
    int seg = 0;     // position of the segment along its edge, counted from edge.a
};

/**
 * A good drawing of K_n stored as the rotation system of its planarization.
 *
 * Vertices 0..n_real-1 are the vertices of K_n; n_real..n_real+crossings-1
 * are degree-4 dummies, one per crossing. Drawings live on the sphere.
 * Instances are immutable once built; the constructor does not validate
 * (see validate()), so malformed data can be represented and reported.
 */
class Drawing {
public:
    Drawing() = default;
    Drawing(int n_real, int crossings, std::vector<Dart> darts);

    int n_real() const { return n_real_; }
    int crossings() const { return crossings_; }
    int num_vertices() const { return n_real_ + crossings_; }
    int num_darts() const { return static_cast<int>(darts_.size()); }
    int num_segments() const { return num_darts() / 2; }

    const Dart& dart(int d) const { return darts_[static_cast<std::size_t>(d)]; }
    std::span<const Dart> darts() const { return darts_; }
    int twin(int d) const { return dart(d).twin; }
    int next(int d) const { return dart(d).next; }
    int prev(int d) const { return prev_[static_cast<std::size_t>(d)]; }
    int origin(int d) const { return dart(d).origin; }
    /// Successor of d on its face walk (twin, then rotation successor).
    int face_next(int d) const { return next(twin(d)); }

    bool is_real(int v) const { return v < n_real_; }
    /// One dart leaving v, or -1 when v has none.
    int vertex_dart(int v) const { return vertex_dart_[static_cast<std::size_t>(v)]; }
    int degree(int v) const;
    /// Darts leaving v in clockwise order starting at vertex_dart(v).
    std::vector<int> rotation(int v) const;
    /// The dart of edge e leaving real endpoint v.
    int dart_from_real(int v, const Edge& e) const;
    /// Segment id of the segment carrying dart d (the smaller dart id of the pair).
    int segment_of(int d) const { return d < twin(d) ? d : twin(d); }

    /// True when the arrays are mutually consistent enough for navigation.
    bool structurally_sound() const { return sound_; }

    bool operator==(const Drawing& o) const {
        return n_real_ == o.n_real_ && crossings_ == o.crossings_ && same_darts(o);
    }

private:
    bool same_darts(const Drawing& o) const;

    int n_real_ = 0;
    int crossings_ = 0;
    std::vector<Dart> darts_;
    std::vector<int> prev_;
    std::vector<int> vertex_dart_;
    bool sound_ = false;
};

/// A half-edge used when assembling a drawing from rotations.
struct HalfEdge {
    int to = -1;
    Edge edge;
    int tag = -1;  // caller payload carried to the built dart
};

struct BuiltDrawing {
    Drawing drawing;
    std::vector<int> tags;  // per dart
};

/**
 * Assembles a drawing from per-vertex clockwise rotations. Dart ids are
 * assigned vertex by vertex in rotation order; seg indices are recomputed
 * by walking every edge from its lower endpoint. The planarization must be
 * a simple graph (always true for good drawings).
 */
BuiltDrawing build_drawing(int n_real, const std::vector<std::vector<HalfEdge>>& rotations);

/// Crossing-free drawing of K_4.
Drawing seed_k4();

struct Violation {
    std::string kind;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(const std::string& kind) const;
};

/// Checks every structural and goodness invariant of a drawing.
ValidationReport validate(const Drawing& d);

struct Face {
    int id = 0;
    std::vector<int> dart_cycle;
};

/// Face cycles of a drawing together with the dart to face lookup.
class FaceMap {
public:
    explicit FaceMap(const Drawing& d);

    int size() const { return static_cast<int>(faces_.size()); }
    const Face& face(int f) const { return faces_[static_cast<std::size_t>(f)]; }
    const std::vector<Face>& faces() const { return faces_; }
    int face_of(int dart) const { return face_of_[static_cast<std::size_t>(dart)]; }

private:
    std::vector<Face> faces_;
    std::vector<int> face_of_;
};

std::vector<Face> faces(const Drawing& d);

using CrossingPair = std::pair<Edge, Edge>;
using CrossingPairSet = std::vector<CrossingPair>;  // sorted, one entry per crossing

CrossingPairSet crossing_pairs(const Drawing& d);

/// The two K_n edges meeting at dummy vertex x.
std::pair<Edge, Edge> dummy_edges(const Drawing& d, int x);

/// Number of crossings involving at least one edge incident with real vertex v.
int crossings_at(const Drawing& d, int v);

/// Removes real vertex v and its edges, re-fusing the surviving segments.
Drawing delete_vertex(const Drawing& d, int v);

/// Mirror image: every rotation reversed.
Drawing mirror(const Drawing& d);

/// Renames real vertex v to perm[v].
Drawing relabel(const Drawing& d, std::span<const int> perm);

struct Renumbered {
    Drawing drawing;
    std::vector<int> dart_map;  // old dart id -> new dart id
};

/**
 * Deterministic renumbering from the labelled structure alone: dummies in
 * order of first appearance along edges sorted lexicographically, darts
 * vertex by vertex in rotation order.
 */
Renumbered normalize_with_map(const Drawing& d);
Drawing normalize(const Drawing& d);

}  // namespace forge

#endif
