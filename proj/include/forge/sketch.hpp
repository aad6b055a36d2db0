#ifndef FORGE_SKETCH_HPP
#define FORGE_SKETCH_HPP

#include <functional>
#include <span>
#include <vector>

#include "forge/drawing.hpp"
#include "forge/routing.hpp"

namespace forge {

/**
 * A base drawing plus a new vertex placed inside one of its faces, into which
 * the curves of new edges are drawn one at a time. Base darts keep their ids;
 * a base segment crossed by new curves is split into pieces that remember the
 * base dart they came from, so later curves can find "the segment crossed
 * next" even after earlier curves have cut it.
 */
class Sketch {
public:
    Sketch(const Drawing& base, int insertion_face_dart);

    int new_vertex() const { return new_vertex_; }
    int num_darts() const { return static_cast<int>(next_.size()); }
    int num_new_curves() const { return curves_; }

    /**
     * Enumerates every way of adding the curve of routing r (from the new
     * vertex to r.target) without crossing previously drawn curves. For each,
     * `cont` is called with the extended sketch; enumeration stops as soon as
     * `cont` returns true, and the result reports whether it did.
     */
    bool draw(const Routing& r, const std::function<bool(Sketch&)>& cont) const;

    /// Draws all routings in order; calls `cont` on each complete realization.
    static bool draw_all(const Sketch& s, std::span<const Routing> rs, const std::function<bool(Sketch&)>& cont);

    struct Result {
        Drawing drawing;
        std::vector<int> base_dart_of;  // per dart of drawing: base dart, -1 on new edges
    };
    /// Drawing of K_{n+1}; the new vertex gets real id n.
    Result finish() const;

private:
    int add_vertex();
    int subdivide(int dart);
    void connect(int u, int u_corner, int w, int w_corner, Edge e);
    void insert_before(int corner, int dart);
    std::vector<int> face_cycle(int dart) const;
    bool step(const Routing& r, std::size_t i, int tip, int tip_corner, int face_dart,
              const std::function<bool(Sketch&)>& cont);

    int n_real_ = 0;
    int new_vertex_ = 0;
    int num_vertices_ = 0;
    int start_face_dart_ = -1;
    int curves_ = 0;
    std::vector<int> twin_, next_, prev_, origin_, base_dart_;
    std::vector<Edge> edge_;
};

}  // namespace forge

#endif
