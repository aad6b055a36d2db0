#include "forge/sketch.hpp"

#include <algorithm>
#include <stdexcept>

namespace forge {

Sketch::Sketch(const Drawing& base, int insertion_face_dart)
    : n_real_(base.n_real()), start_face_dart_(insertion_face_dart) {
    const int m = base.num_darts();
    twin_.resize(static_cast<std::size_t>(m));
    next_.resize(static_cast<std::size_t>(m));
    prev_.resize(static_cast<std::size_t>(m));
    origin_.resize(static_cast<std::size_t>(m));
    base_dart_.resize(static_cast<std::size_t>(m));
    edge_.resize(static_cast<std::size_t>(m));
    for (int d = 0; d < m; ++d) {
        const auto i = static_cast<std::size_t>(d);
        twin_[i] = base.twin(d);
        next_[i] = base.next(d);
        prev_[i] = base.prev(d);
        origin_[i] = base.origin(d);
        base_dart_[i] = d;
        edge_[i] = base.dart(d).edge;
    }
    num_vertices_ = base.num_vertices();
    new_vertex_ = add_vertex();
}

int Sketch::add_vertex() { return num_vertices_++; }

void Sketch::insert_before(int corner, int dart) {
    const auto c = static_cast<std::size_t>(corner);
    const auto g = static_cast<std::size_t>(dart);
    const int p = prev_[c];
    next_[static_cast<std::size_t>(p)] = dart;
    prev_[g] = p;
    next_[g] = corner;
    prev_[c] = dart;
}

int Sketch::subdivide(int p) {
    const int t = twin_[static_cast<std::size_t>(p)];
    const int x = add_vertex();
    const int d1 = num_darts();      // x -> origin(p), twin of p
    const int d2 = d1 + 1;           // x -> origin(t), twin of t
    twin_.insert(twin_.end(), {p, t});
    next_.insert(next_.end(), {d2, d1});
    prev_.insert(prev_.end(), {d2, d1});
    origin_.insert(origin_.end(), {x, x});
    base_dart_.insert(base_dart_.end(), {base_dart_[static_cast<std::size_t>(t)], base_dart_[static_cast<std::size_t>(p)]});
    edge_.insert(edge_.end(), {edge_[static_cast<std::size_t>(p)], edge_[static_cast<std::size_t>(p)]});
    twin_[static_cast<std::size_t>(p)] = d1;
    twin_[static_cast<std::size_t>(t)] = d2;
    return x;
}

void Sketch::connect(int u, int u_corner, int w, int w_corner, Edge e) {
    const int a = num_darts();  // u -> w
    const int b = a + 1;        // w -> u
    twin_.insert(twin_.end(), {b, a});
    next_.insert(next_.end(), {a, b});
    prev_.insert(prev_.end(), {a, b});
    origin_.insert(origin_.end(), {u, w});
    base_dart_.insert(base_dart_.end(), {-1, -1});
    edge_.insert(edge_.end(), {e, e});
    if (u_corner >= 0) insert_before(u_corner, a);
    if (w_corner >= 0) insert_before(w_corner, b);
}

std::vector<int> Sketch::face_cycle(int dart) const {
    std::vector<int> cyc;
    int cur = dart;
    do {
        cyc.push_back(cur);
        cur = next_[static_cast<std::size_t>(twin_[static_cast<std::size_t>(cur)])];
    } while (cur != dart);
    return cyc;
}

bool Sketch::step(const Routing& r, std::size_t i, int tip, int tip_corner, int face_dart,
                  const std::function<bool(Sketch&)>& cont) {
    const Edge e = make_edge(r.target, n_real_);
    const auto cyc = face_cycle(face_dart);
    if (i == r.crossed.size()) {
        if (std::find(cyc.begin(), cyc.end(), r.end_dart) == cyc.end()) return false;
        connect(tip, tip_corner, r.target, r.end_dart, e);
        ++curves_;
        return cont(*this);
    }
    const int want = r.crossed[i];
    std::vector<int> pieces;
    for (int g : cyc)
        if (base_dart_[static_cast<std::size_t>(g)] == want) pieces.push_back(g);
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const bool last = k + 1 == pieces.size();
        Sketch copy = last ? Sketch(std::move(*this)) : *this;
        const int p = pieces[k];
        const int x = copy.subdivide(p);
        const int near = copy.num_darts() - 1;  // x -> far end of p, on this face
        const int far = near - 1;               // x -> origin(p), on the face across
        copy.connect(tip, tip_corner, x, near, e);
        if (copy.step(r, i + 1, x, far, far, cont)) return true;
        if (last) return false;
    }
    return false;
}

bool Sketch::draw(const Routing& r, const std::function<bool(Sketch&)>& cont) const {
    // the first piece to meet: the next crossed segment, or the end corner
    auto wanted_on = [&](const std::vector<int>& cyc) {
        for (int g : cyc) {
            if (r.crossed.empty() ? g == r.end_dart : base_dart_[static_cast<std::size_t>(g)] == r.crossed.front())
                return true;
        }
        return false;
    };
    if (curves_ == 0) {
        Sketch copy = *this;
        return copy.step(r, 0, new_vertex_, -1, start_face_dart_, cont);
    }
    std::vector<int> corners;
    for (int g = 0; g < num_darts(); ++g)
        if (origin_[static_cast<std::size_t>(g)] == new_vertex_) corners.push_back(g);
    // clockwise order from the first dart, for deterministic exploration
    std::vector<int> ordered;
    int cur = corners.front();
    do {
        ordered.push_back(cur);
        cur = next_[static_cast<std::size_t>(cur)];
    } while (cur != corners.front());
    for (int c : ordered) {
        if (!wanted_on(face_cycle(c))) continue;
        Sketch copy = *this;
        if (copy.step(r, 0, new_vertex_, c, c, cont)) return true;
    }
    return false;
}

bool Sketch::draw_all(const Sketch& s, std::span<const Routing> rs, const std::function<bool(Sketch&)>& cont) {
    if (rs.empty()) {
        Sketch copy = s;
        return cont(copy);
    }
    return s.draw(rs.front(), [&](Sketch& t) { return draw_all(t, rs.subspan(1), cont); });
}

Sketch::Result Sketch::finish() const {
    std::vector<int> final_id(static_cast<std::size_t>(num_vertices_));
    for (int u = 0; u < num_vertices_; ++u) {
        if (u < n_real_) final_id[static_cast<std::size_t>(u)] = u;
        else if (u == new_vertex_) final_id[static_cast<std::size_t>(u)] = n_real_;
        else if (u < new_vertex_) final_id[static_cast<std::size_t>(u)] = u + 1;
        else final_id[static_cast<std::size_t>(u)] = u;
    }
    std::vector<int> any(static_cast<std::size_t>(num_vertices_), -1);
    for (int g = 0; g < num_darts(); ++g) any[static_cast<std::size_t>(origin_[static_cast<std::size_t>(g)])] = g;
    std::vector<std::vector<HalfEdge>> rot(static_cast<std::size_t>(num_vertices_));
    for (int u = 0; u < num_vertices_; ++u) {
        const int start = any[static_cast<std::size_t>(u)];
        if (start < 0) throw std::logic_error("Sketch::finish: isolated vertex");
        auto& out = rot[static_cast<std::size_t>(final_id[static_cast<std::size_t>(u)])];
        int g = start;
        do {
            out.push_back({final_id[static_cast<std::size_t>(origin_[static_cast<std::size_t>(twin_[static_cast<std::size_t>(g)])])],
                           edge_[static_cast<std::size_t>(g)], g});
            g = next_[static_cast<std::size_t>(g)];
        } while (g != start);
    }
    BuiltDrawing built = build_drawing(n_real_ + 1, rot);
    Renumbered norm = normalize_with_map(built.drawing);
    Result res;
    res.base_dart_of.assign(static_cast<std::size_t>(norm.drawing.num_darts()), -1);
    for (int d = 0; d < built.drawing.num_darts(); ++d) {
        const int sketch_dart = built.tags[static_cast<std::size_t>(d)];
        res.base_dart_of[static_cast<std::size_t>(norm.dart_map[static_cast<std::size_t>(d)])] =
            base_dart_[static_cast<std::size_t>(sketch_dart)];
    }
    res.drawing = std::move(norm.drawing);
    return res;
}

}  // namespace forge
