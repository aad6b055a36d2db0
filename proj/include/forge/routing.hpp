#ifndef FORGE_ROUTING_HPP
#define FORGE_ROUTING_HPP

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "forge/drawing.hpp"

namespace forge {

struct DualArc {
    int segment = 0;   // segment id
    int dart = 0;      // dart on this face's side
    int opposite = 0;  // face across the segment
};

/// Faces as nodes, one arc per segment.
struct DualGraph {
    std::vector<std::vector<DualArc>> incidence;      // face -> arcs
    std::vector<std::vector<int>> vertex_incidence;  // face -> sorted real vertices on its boundary

    int num_nodes() const { return static_cast<int>(incidence.size()); }
    int num_arcs() const;
};

DualGraph dual(const Drawing& d, const FaceMap& fm);
DualGraph dual(const Drawing& d);

/**
 * Prospective curve of a new edge from an insertion face to a real vertex.
 * crossed[i] is the dart of the i-th crossed segment on the side of faces[i];
 * faces[i+1] lies across it. end_dart is the dart of faces.back() leaving the
 * target, i.e. the corner where the curve ends.
 */
struct Routing {
    int origin_face = 0;
    int target = 0;
    std::vector<int> crossed;
    std::vector<int> faces;
    int end_dart = -1;

    int length() const { return static_cast<int>(crossed.size()); }
    std::vector<int> segment_ids(const Drawing& d) const;
    /// Sorted crossed K_n edges; the equivalence key.
    std::vector<Edge> crossed_edges(const Drawing& d) const;
    bool passes_through(int face) const;
    bool operator==(const Routing&) const = default;
};

/// Shared read-only routing state for one drawing: faces, dual, and per-target distances.
class RoutingContext {
public:
    explicit RoutingContext(const Drawing& d);

    const Drawing& drawing() const { return *d_; }
    const FaceMap& face_map() const { return fm_; }
    const DualGraph& dual_graph() const { return dual_; }
    int num_faces() const { return fm_.size(); }

    /// Dual distance from every face to the nearest face incident with w,
    /// never crossing a segment of an edge incident with w.
    const std::vector<int>& distances_to(int w) const { return dist_[static_cast<std::size_t>(w)]; }
    int distance(int face, int w) const { return distances_to(w)[static_cast<std::size_t>(face)]; }

    bool on_face(int face, int w) const;

private:
    std::shared_ptr<const Drawing> d_;
    FaceMap fm_;
    DualGraph dual_;
    std::vector<std::vector<int>> dist_;
};

constexpr int kUnreachable = 1 << 28;

/// Lower bound on the length of any routing from face to w; 0 when w lies on the face.
int distances(const Drawing& d, int face, int w);

/**
 * Every routing from face to w of length at most max_len whose crossed edges
 * are pairwise distinct and avoid w, in lexicographic order of crossed
 * segment ids. With distinct_faces the visited faces are pairwise distinct.
 */
std::vector<Routing> enumerate_routings(const RoutingContext& ctx, int face, int w, int max_len, bool distinct_faces);
std::vector<Routing> enumerate_routings(const Drawing& d, int face, int w, int max_len, bool distinct_faces);

/// Checks every Routing invariant against the drawing; empty string when sound.
std::string check_routing(const RoutingContext& ctx, const Routing& r, bool distinct_faces);

/// `R F=<f> w=<w> len=<k>: <seg,seg,...>`
void dump_routing(std::ostream& out, const Drawing& d, const Routing& r);

}  // namespace forge

#endif
