#include "forge/drawing.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace forge {

namespace {

std::string edge_str(const Edge& e) { return std::to_string(e.a + 1) + "-" + std::to_string(e.b + 1); }

// Dart of the same edge on the far side of dummy reached through d.
int straight_on(const Drawing& d, int dart) { return d.next(d.next(d.twin(dart))); }

}  // namespace

Drawing::Drawing(int n_real, int crossings, std::vector<Dart> darts)
    : n_real_(n_real), crossings_(crossings), darts_(std::move(darts)) {
    const int m = num_darts();
    const int nv = std::max(0, num_vertices());
    prev_.assign(static_cast<std::size_t>(m), -1);
    vertex_dart_.assign(static_cast<std::size_t>(nv), -1);
    sound_ = n_real_ >= 0 && crossings_ >= 0;
    std::vector<char> hit(static_cast<std::size_t>(m), 0);
    for (int d = 0; d < m && sound_; ++d) {
        const Dart& x = darts_[static_cast<std::size_t>(d)];
        if (x.twin < 0 || x.twin >= m || x.next < 0 || x.next >= m || x.origin < 0 || x.origin >= nv) {
            sound_ = false;
            break;
        }
        if (hit[static_cast<std::size_t>(x.next)]) {
            sound_ = false;
            break;
        }
        hit[static_cast<std::size_t>(x.next)] = 1;
        prev_[static_cast<std::size_t>(x.next)] = d;
    }
    if (!sound_) {
        std::fill(prev_.begin(), prev_.end(), -1);
        return;
    }
    for (int d = 0; d < m; ++d) {
        const Dart& x = darts_[static_cast<std::size_t>(d)];
        if (darts_[static_cast<std::size_t>(x.twin)].twin != d || x.twin == d) sound_ = false;
        if (darts_[static_cast<std::size_t>(x.next)].origin != x.origin) sound_ = false;
        if (vertex_dart_[static_cast<std::size_t>(x.origin)] < 0) vertex_dart_[static_cast<std::size_t>(x.origin)] = d;
    }
}

bool Drawing::same_darts(const Drawing& o) const {
    if (darts_.size() != o.darts_.size()) return false;
    for (std::size_t i = 0; i < darts_.size(); ++i) {
        const Dart& p = darts_[i];
        const Dart& q = o.darts_[i];
        if (p.twin != q.twin || p.next != q.next || p.origin != q.origin || p.edge != q.edge || p.seg != q.seg)
            return false;
    }
    return true;
}

int Drawing::degree(int v) const {
    const int start = vertex_dart(v);
    if (start < 0) return 0;
    int k = 0;
    int d = start;
    do {
        ++k;
        d = next(d);
    } while (d != start && k <= num_darts());
    return k;
}

std::vector<int> Drawing::rotation(int v) const {
    std::vector<int> out;
    const int start = vertex_dart(v);
    if (start < 0) return out;
    int d = start;
    do {
        out.push_back(d);
        d = next(d);
    } while (d != start && static_cast<int>(out.size()) <= num_darts());
    return out;
}

int Drawing::dart_from_real(int v, const Edge& e) const {
    for (int d : rotation(v))
        if (dart(d).edge == e) return d;
    return -1;
}

BuiltDrawing build_drawing(int n_real, const std::vector<std::vector<HalfEdge>>& rotations) {
    const int nv = static_cast<int>(rotations.size());
    std::vector<Dart> darts;
    std::vector<int> tags;
    std::vector<std::unordered_map<int, int>> out_of(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) {
        const auto& rot = rotations[static_cast<std::size_t>(v)];
        const int first = static_cast<int>(darts.size());
        const int k = static_cast<int>(rot.size());
        for (int i = 0; i < k; ++i) {
            const HalfEdge& h = rot[static_cast<std::size_t>(i)];
            Dart x;
            x.origin = v;
            x.next = first + (i + 1) % k;
            x.edge = h.edge;
            if (!out_of[static_cast<std::size_t>(v)].emplace(h.to, first + i).second)
                throw std::invalid_argument("build_drawing: parallel segments at vertex " + std::to_string(v));
            darts.push_back(x);
            tags.push_back(h.tag);
        }
    }
    // twins: the half-edge (v -> w) pairs with (w -> v)
    for (int v = 0; v < nv; ++v) {
        for (const auto& [to, d] : out_of[static_cast<std::size_t>(v)]) {
            if (to < 0 || to >= nv) throw std::invalid_argument("build_drawing: neighbour out of range");
            auto it = out_of[static_cast<std::size_t>(to)].find(v);
            if (it == out_of[static_cast<std::size_t>(to)].end())
                throw std::invalid_argument("build_drawing: unmatched half-edge " + std::to_string(v) + "->" +
                                            std::to_string(to));
            darts[static_cast<std::size_t>(d)].twin = it->second;
        }
    }
    Drawing tmp(n_real, nv - n_real, darts);
    // seg indices, walking each edge from its lower endpoint
    for (int d = 0; d < static_cast<int>(darts.size()); ++d) {
        const Dart& x = darts[static_cast<std::size_t>(d)];
        if (x.origin >= n_real || x.edge.a != x.origin) continue;
        int cur = d;
        int seg = 0;
        for (int guard = 0; guard <= static_cast<int>(darts.size()); ++guard) {
            darts[static_cast<std::size_t>(cur)].seg = seg;
            darts[static_cast<std::size_t>(tmp.twin(cur))].seg = seg;
            const int at = tmp.origin(tmp.twin(cur));
            if (at < n_real) break;
            cur = straight_on(tmp, cur);
            ++seg;
        }
    }
    return {Drawing(n_real, nv - n_real, std::move(darts)), std::move(tags)};
}

Drawing seed_k4() {
    // vertex 3 inside the triangle 0,1,2
    const int nbrs[4][3] = {{1, 3, 2}, {2, 3, 0}, {0, 3, 1}, {0, 1, 2}};
    std::vector<std::vector<HalfEdge>> rot(4);
    for (int v = 0; v < 4; ++v)
        for (int w : nbrs[v]) rot[static_cast<std::size_t>(v)].push_back({w, make_edge(v, w)});
    return normalize(build_drawing(4, rot).drawing);
}

bool ValidationReport::has(const std::string& kind) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate(const Drawing& d) {
    ValidationReport rep;
    auto add = [&](std::string kind, std::string detail) { rep.violations.push_back({std::move(kind), std::move(detail)}); };
    const int n = d.n_real();
    const int nv = d.num_vertices();
    const int m = d.num_darts();
    if (n < 4) {
        add("structure", "n_real=" + std::to_string(n) + " is below 4");
        return rep;
    }
    if (!d.structurally_sound()) {
        // pinpoint the first offending dart
        std::vector<int> seen(static_cast<std::size_t>(m), 0);
        for (int i = 0; i < m; ++i) {
            const Dart& x = d.dart(i);
            if (x.twin < 0 || x.twin >= m) add("structure", "dart " + std::to_string(i) + " twin out of range");
            else if (d.dart(x.twin).twin != i || x.twin == i)
                add("structure", "dart " + std::to_string(i) + " twin is not an involution");
            if (x.next < 0 || x.next >= m) add("structure", "dart " + std::to_string(i) + " next out of range");
            else if (seen[static_cast<std::size_t>(x.next)]++)
                add("structure", "dart " + std::to_string(x.next) + " has two rotation predecessors");
            else if (d.dart(x.next).origin != x.origin)
                add("structure", "dart " + std::to_string(i) + " rotation leaves its vertex");
            if (x.origin < 0 || x.origin >= nv) add("structure", "dart " + std::to_string(i) + " origin out of range");
        }
        if (rep.ok()) add("structure", "inconsistent dart arrays");
        return rep;
    }

    // vertex stars
    std::vector<int> count(static_cast<std::size_t>(nv), 0);
    for (int i = 0; i < m; ++i) ++count[static_cast<std::size_t>(d.origin(i))];
    bool stars_ok = true;
    for (int v = 0; v < nv; ++v) {
        if (count[static_cast<std::size_t>(v)] == 0) {
            add("structure", "vertex " + std::to_string(v + 1) + " has no darts");
            stars_ok = false;
            continue;
        }
        if (d.degree(v) != count[static_cast<std::size_t>(v)]) {
            add("rotation", "vertex " + std::to_string(v + 1) + " rotation splits into several cycles");
            stars_ok = false;
        }
        const int want = d.is_real(v) ? n - 1 : 4;
        if (count[static_cast<std::size_t>(v)] != want)
            add("degree", "vertex " + std::to_string(v + 1) + " has degree " +
                              std::to_string(count[static_cast<std::size_t>(v)]) + ", expected " + std::to_string(want));
    }
    for (int i = 0; i < m; ++i) {
        const Dart& x = d.dart(i);
        if (x.edge.a < 0 || x.edge.b >= n || x.edge.a >= x.edge.b) {
            add("edge label", "dart " + std::to_string(i) + " carries invalid edge");
            return rep;
        }
        const Dart& t = d.dart(x.twin);
        if (t.edge != x.edge || t.seg != x.seg)
            add("twin", "dart " + std::to_string(i) + " and its twin disagree on edge/seg");
        if (t.origin == x.origin) add("twin", "dart " + std::to_string(i) + " is a loop");
    }
    if (!stars_ok) return rep;

    // dummies first, so goodness is reported even when labels elsewhere are off:
    // alternating, distinct, non-adjacent edges; at most one crossing per edge pair
    std::map<CrossingPair, int> pairs;
    for (int x = n; x < nv; ++x) {
        const auto r = d.rotation(x);
        const Edge& e0 = d.dart(r[0]).edge;
        const Edge& e1 = d.dart(r[1]).edge;
        if (d.dart(r[2]).edge != e0 || d.dart(r[3]).edge != e1 || e0 == e1) {
            add("rotation", "dummy " + std::to_string(x + 1) + " does not alternate between two edges");
            continue;
        }
        if (e0.shares_endpoint(e1))
            add("adjacent edges cross", "dummy " + std::to_string(x + 1) + " crosses " + edge_str(e0) + " with " +
                                            edge_str(e1));
        const auto key = e0 < e1 ? CrossingPair{e0, e1} : CrossingPair{e1, e0};
        if (++pairs[key] == 2)
            add("edges cross twice", edge_str(key.first) + " and " + edge_str(key.second) + " cross more than once");
    }

    // real stars carry each incident edge once
    for (int v = 0; v < n; ++v) {
        std::vector<int> got(static_cast<std::size_t>(n), 0);
        for (int g : d.rotation(v)) {
            const Edge& e = d.dart(g).edge;
            if (!e.has(v)) {
                add("edge label", "dart " + std::to_string(g) + " at vertex " + std::to_string(v + 1) +
                                      " carries non-incident edge " + edge_str(e));
                continue;
            }
            ++got[static_cast<std::size_t>(e.a == v ? e.b : e.a)];
        }
        for (int t = 0; t < n; ++t)
            if (t != v && got[static_cast<std::size_t>(t)] != 1)
                add("edge label", "vertex " + std::to_string(v + 1) + " does not carry edge to " + std::to_string(t + 1) +
                                      " exactly once");
    }
    if (!rep.ok()) return rep;

    // edge paths
    std::map<Edge, int> darts_on;
    for (int i = 0; i < m; ++i) ++darts_on[d.dart(i).edge];
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const Edge e{a, b};
            int cur = d.dart_from_real(a, e);
            int seg = 0;
            bool ok = true;
            while (true) {
                if (d.dart(cur).seg != seg) {
                    ok = false;
                    break;
                }
                const int at = d.origin(d.twin(cur));
                if (d.is_real(at)) {
                    ok = at == b;
                    break;
                }
                cur = straight_on(d, cur);
                ++seg;
                if (seg > m || d.dart(cur).edge != e) {
                    ok = false;
                    break;
                }
            }
            if (!ok || 2 * (seg + 1) != darts_on[e])
                add("edge path", "edge " + edge_str(e) + " does not form a simple segment path");
        }

    // Euler and connectivity
    const FaceMap fm(d);
    if (nv - m / 2 + fm.size() != 2)
        add("euler", "V - E + F = " + std::to_string(nv - m / 2 + fm.size()));
    std::vector<char> reached(static_cast<std::size_t>(nv), 0);
    std::vector<int> stack{0};
    reached[0] = 1;
    int seen = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int g : d.rotation(v)) {
            const int t = d.origin(d.twin(g));
            if (!reached[static_cast<std::size_t>(t)]) {
                reached[static_cast<std::size_t>(t)] = 1;
                ++seen;
                stack.push_back(t);
            }
        }
    }
    if (seen != nv) add("connectivity", std::to_string(nv - seen) + " vertices unreachable");
    return rep;
}

FaceMap::FaceMap(const Drawing& d) : face_of_(static_cast<std::size_t>(d.num_darts()), -1) {
    for (int s = 0; s < d.num_darts(); ++s) {
        if (face_of_[static_cast<std::size_t>(s)] >= 0) continue;
        Face f;
        f.id = static_cast<int>(faces_.size());
        int cur = s;
        do {
            face_of_[static_cast<std::size_t>(cur)] = f.id;
            f.dart_cycle.push_back(cur);
            cur = d.face_next(cur);
        } while (cur != s);
        faces_.push_back(std::move(f));
    }
}

std::vector<Face> faces(const Drawing& d) { return FaceMap(d).faces(); }

std::pair<Edge, Edge> dummy_edges(const Drawing& d, int x) {
    const int g = d.vertex_dart(x);
    const Edge& e0 = d.dart(g).edge;
    const Edge& e1 = d.dart(d.next(g)).edge;
    return e0 < e1 ? std::pair{e0, e1} : std::pair{e1, e0};
}

CrossingPairSet crossing_pairs(const Drawing& d) {
    CrossingPairSet out;
    out.reserve(static_cast<std::size_t>(d.crossings()));
    for (int x = d.n_real(); x < d.num_vertices(); ++x) out.push_back(dummy_edges(d, x));
    std::sort(out.begin(), out.end());
    return out;
}

int crossings_at(const Drawing& d, int v) {
    if (v < 0 || v >= d.n_real()) throw std::out_of_range("crossings_at: vertex " + std::to_string(v) + " is not real");
    int k = 0;
    for (int x = d.n_real(); x < d.num_vertices(); ++x) {
        const auto [e0, e1] = dummy_edges(d, x);
        if (e0.has(v) || e1.has(v)) ++k;
    }
    return k;
}

Drawing delete_vertex(const Drawing& d, int v) {
    const int n = d.n_real();
    if (n <= 4) throw std::invalid_argument("delete_vertex: needs at least 5 real vertices");
    if (v < 0 || v >= n) throw std::out_of_range("delete_vertex: vertex is not real");
    std::vector<int> new_id(static_cast<std::size_t>(d.num_vertices()), -1);
    int next_id = 0;
    for (int u = 0; u < n; ++u)
        if (u != v) new_id[static_cast<std::size_t>(u)] = next_id++;
    for (int x = n; x < d.num_vertices(); ++x) {
        const auto [e0, e1] = dummy_edges(d, x);
        if (!e0.has(v) && !e1.has(v)) new_id[static_cast<std::size_t>(x)] = next_id++;
    }
    auto lab = [&](int u) { return u < v ? u : u - 1; };
    std::vector<std::vector<HalfEdge>> rot(static_cast<std::size_t>(next_id));
    for (int u = 0; u < d.num_vertices(); ++u) {
        const int nu = new_id[static_cast<std::size_t>(u)];
        if (nu < 0) continue;
        for (int g : d.rotation(u)) {
            const Edge& e = d.dart(g).edge;
            if (e.has(v)) continue;
            int h = g;
            int to = d.origin(d.twin(h));
            while (new_id[static_cast<std::size_t>(to)] < 0) {
                h = straight_on(d, h);
                to = d.origin(d.twin(h));
            }
            rot[static_cast<std::size_t>(nu)].push_back(
                {new_id[static_cast<std::size_t>(to)], make_edge(lab(e.a), lab(e.b))});
        }
    }
    return normalize(build_drawing(n - 1, rot).drawing);
}

Drawing mirror(const Drawing& d) {
    std::vector<std::vector<HalfEdge>> rot(static_cast<std::size_t>(d.num_vertices()));
    for (int u = 0; u < d.num_vertices(); ++u) {
        auto r = d.rotation(u);
        std::reverse(r.begin(), r.end());
        for (int g : r) rot[static_cast<std::size_t>(u)].push_back({d.origin(d.twin(g)), d.dart(g).edge});
    }
    return normalize(build_drawing(d.n_real(), rot).drawing);
}

Drawing relabel(const Drawing& d, std::span<const int> perm) {
    const int n = d.n_real();
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("relabel: permutation size mismatch");
    auto map_v = [&](int u) { return u < n ? perm[static_cast<std::size_t>(u)] : u; };
    std::vector<std::vector<HalfEdge>> rot(static_cast<std::size_t>(d.num_vertices()));
    for (int u = 0; u < d.num_vertices(); ++u)
        for (int g : d.rotation(u)) {
            const Edge& e = d.dart(g).edge;
            rot[static_cast<std::size_t>(map_v(u))].push_back(
                {map_v(d.origin(d.twin(g))), make_edge(map_v(e.a), map_v(e.b))});
        }
    return normalize(build_drawing(n, rot).drawing);
}

Renumbered normalize_with_map(const Drawing& d) {
    const int n = d.n_real();
    const int nv = d.num_vertices();
    std::vector<int> new_id(static_cast<std::size_t>(nv), -1);
    for (int u = 0; u < n; ++u) new_id[static_cast<std::size_t>(u)] = u;
    int next_id = n;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            int cur = d.dart_from_real(a, Edge{a, b});
            while (true) {
                const int at = d.origin(d.twin(cur));
                if (d.is_real(at)) break;
                if (new_id[static_cast<std::size_t>(at)] < 0) new_id[static_cast<std::size_t>(at)] = next_id++;
                cur = straight_on(d, cur);
            }
        }
    std::vector<int> old_of(static_cast<std::size_t>(nv));
    for (int u = 0; u < nv; ++u) old_of[static_cast<std::size_t>(new_id[static_cast<std::size_t>(u)])] = u;

    std::vector<std::vector<HalfEdge>> rot(static_cast<std::size_t>(nv));
    for (int nu = 0; nu < nv; ++nu) {
        const int u = old_of[static_cast<std::size_t>(nu)];
        auto r = d.rotation(u);
        auto key = [&](int g) {
            const Dart& x = d.dart(g);
            if (d.is_real(u)) return std::pair{x.edge.a == u ? x.edge.b : x.edge.a, 0};
            return std::pair{edge_index(x.edge, n), x.seg};
        };
        const auto first = std::min_element(r.begin(), r.end(), [&](int p, int q) { return key(p) < key(q); });
        std::rotate(r.begin(), first, r.end());
        for (int g : r)
            rot[static_cast<std::size_t>(nu)].push_back(
                {new_id[static_cast<std::size_t>(d.origin(d.twin(g)))], d.dart(g).edge, g});
    }
    BuiltDrawing built = build_drawing(n, rot);
    std::vector<int> map(static_cast<std::size_t>(d.num_darts()));
    for (int nd = 0; nd < static_cast<int>(built.tags.size()); ++nd) map[static_cast<std::size_t>(built.tags[static_cast<std::size_t>(nd)])] = nd;
    return {std::move(built.drawing), std::move(map)};
}

Drawing normalize(const Drawing& d) { return normalize_with_map(d).drawing; }

}  // namespace forge
