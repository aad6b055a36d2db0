#include "forge/routing.hpp"

#include <algorithm>
#include <deque>
#include <ostream>

namespace forge {

int DualGraph::num_arcs() const {
    int k = 0;
    for (const auto& arcs : incidence) k += static_cast<int>(arcs.size());
    return k / 2;
}

DualGraph dual(const Drawing& d, const FaceMap& fm) {
    DualGraph g;
    g.incidence.resize(static_cast<std::size_t>(fm.size()));
    g.vertex_incidence.resize(static_cast<std::size_t>(fm.size()));
    for (const Face& f : fm.faces()) {
        auto& arcs = g.incidence[static_cast<std::size_t>(f.id)];
        auto& verts = g.vertex_incidence[static_cast<std::size_t>(f.id)];
        for (int dart : f.dart_cycle) {
            arcs.push_back({d.segment_of(dart), dart, fm.face_of(d.twin(dart))});
            if (d.is_real(d.origin(dart))) verts.push_back(d.origin(dart));
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    }
    return g;
}

DualGraph dual(const Drawing& d) { return dual(d, FaceMap(d)); }

std::vector<int> Routing::segment_ids(const Drawing& d) const {
    std::vector<int> s;
    s.reserve(crossed.size());
    for (int g : crossed) s.push_back(d.segment_of(g));
    return s;
}

std::vector<Edge> Routing::crossed_edges(const Drawing& d) const {
    std::vector<Edge> e;
    e.reserve(crossed.size());
    for (int g : crossed) e.push_back(d.dart(g).edge);
    std::sort(e.begin(), e.end());
    return e;
}

bool Routing::passes_through(int face) const { return std::find(faces.begin(), faces.end(), face) != faces.end(); }

RoutingContext::RoutingContext(const Drawing& d)
    : d_(std::make_shared<const Drawing>(d)), fm_(*d_), dual_(dual(*d_, fm_)) {
    const int nf = fm_.size();
    dist_.assign(static_cast<std::size_t>(d.n_real()), std::vector<int>(static_cast<std::size_t>(nf), kUnreachable));
    for (int w = 0; w < d.n_real(); ++w) {
        auto& dist = dist_[static_cast<std::size_t>(w)];
        std::deque<int> queue;
        for (int f = 0; f < nf; ++f)
            if (on_face(f, w)) {
                dist[static_cast<std::size_t>(f)] = 0;
                queue.push_back(f);
            }
        while (!queue.empty()) {
            const int f = queue.front();
            queue.pop_front();
            for (const DualArc& a : dual_.incidence[static_cast<std::size_t>(f)]) {
                if (d_->dart(a.dart).edge.has(w)) continue;
                if (dist[static_cast<std::size_t>(a.opposite)] > dist[static_cast<std::size_t>(f)] + 1) {
                    dist[static_cast<std::size_t>(a.opposite)] = dist[static_cast<std::size_t>(f)] + 1;
                    queue.push_back(a.opposite);
                }
            }
        }
    }
}

bool RoutingContext::on_face(int face, int w) const {
    const auto& v = dual_.vertex_incidence[static_cast<std::size_t>(face)];
    return std::binary_search(v.begin(), v.end(), w);
}

int distances(const Drawing& d, int face, int w) { return RoutingContext(d).distance(face, w); }

namespace {

struct Search {
    const RoutingContext& ctx;
    const Drawing& d;
    int w;
    int max_len;
    bool distinct_faces;
    const std::vector<int>& h;
    std::vector<char> used_edge;
    std::vector<char> visited;
    Routing cur;
    std::vector<Routing> out;

    void run(int f) {
        const Face& face = ctx.face_map().face(f);
        for (int g : face.dart_cycle)
            if (d.origin(g) == w) {
                Routing r = cur;
                r.end_dart = g;
                out.push_back(std::move(r));
            }
        const int len = cur.length();
        if (len >= max_len) return;
        for (int g : face.dart_cycle) {
            const Edge& e = d.dart(g).edge;
            if (e.has(w)) continue;
            const int ei = edge_index(e, d.n_real());
            if (used_edge[static_cast<std::size_t>(ei)]) continue;
            const int f2 = ctx.face_map().face_of(d.twin(g));
            if (distinct_faces && visited[static_cast<std::size_t>(f2)]) continue;
            if (len + 1 + h[static_cast<std::size_t>(f2)] > max_len) continue;
            used_edge[static_cast<std::size_t>(ei)] = 1;
            visited[static_cast<std::size_t>(f2)] += 1;
            cur.crossed.push_back(g);
            cur.faces.push_back(f2);
            run(f2);
            cur.faces.pop_back();
            cur.crossed.pop_back();
            visited[static_cast<std::size_t>(f2)] -= 1;
            used_edge[static_cast<std::size_t>(ei)] = 0;
        }
    }
};

}  // namespace

std::vector<Routing> enumerate_routings(const RoutingContext& ctx, int face, int w, int max_len, bool distinct_faces) {
    const Drawing& d = ctx.drawing();
    const auto& h = ctx.distances_to(w);
    if (h[static_cast<std::size_t>(face)] > max_len) return {};
    const int ne = d.n_real() * (d.n_real() - 1) / 2;
    Search s{ctx, d, w, max_len, distinct_faces, h,
             std::vector<char>(static_cast<std::size_t>(ne), 0),
             std::vector<char>(static_cast<std::size_t>(ctx.num_faces()), 0), Routing{}, {}};
    s.cur.origin_face = face;
    s.cur.target = w;
    s.cur.faces.push_back(face);
    s.visited[static_cast<std::size_t>(face)] = 1;
    s.run(face);
    std::vector<std::pair<std::vector<int>, std::size_t>> keys;
    keys.reserve(s.out.size());
    for (std::size_t i = 0; i < s.out.size(); ++i) {
        auto k = s.out[i].segment_ids(d);
        k.push_back(s.out[i].end_dart);
        keys.emplace_back(std::move(k), i);
    }
    std::sort(keys.begin(), keys.end());
    std::vector<Routing> sorted;
    sorted.reserve(s.out.size());
    for (auto& [k, i] : keys) sorted.push_back(std::move(s.out[i]));
    return sorted;
}

std::vector<Routing> enumerate_routings(const Drawing& d, int face, int w, int max_len, bool distinct_faces) {
    return enumerate_routings(RoutingContext(d), face, w, max_len, distinct_faces);
}

std::string check_routing(const RoutingContext& ctx, const Routing& r, bool distinct_faces) {
    const Drawing& d = ctx.drawing();
    const FaceMap& fm = ctx.face_map();
    if (r.faces.size() != r.crossed.size() + 1) return "face list length mismatch";
    if (r.faces.front() != r.origin_face) return "first face is not the origin face";
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < r.crossed.size(); ++i) {
        const int g = r.crossed[i];
        if (fm.face_of(g) != r.faces[i]) return "crossed segment " + std::to_string(i) + " not on the current face";
        if (fm.face_of(d.twin(g)) != r.faces[i + 1]) return "face after crossing " + std::to_string(i) + " mismatch";
        if (d.dart(g).edge.has(r.target)) return "crosses an edge incident with the target";
        edges.push_back(d.dart(g).edge);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) return "crosses an edge twice";
    if (r.end_dart < 0 || d.origin(r.end_dart) != r.target || fm.face_of(r.end_dart) != r.faces.back())
        return "does not end at a corner of the target";
    if (distinct_faces) {
        auto f = r.faces;
        std::sort(f.begin(), f.end());
        if (std::adjacent_find(f.begin(), f.end()) != f.end()) return "revisits a face";
    }
    return {};
}

void dump_routing(std::ostream& out, const Drawing& d, const Routing& r) {
    out << "R F=" << r.origin_face << " w=" << r.target + 1 << " len=" << r.length() << ':';
    char sep = ' ';
    for (int s : r.segment_ids(d)) {
        out << sep << s;
        sep = ',';
    }
    out << '\n';
}

}  // namespace forge
