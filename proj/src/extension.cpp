#include "forge/extension.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "forge/canonical.hpp"
#include "forge/sketch.hpp"

namespace forge {

int InsertionCandidate::total_added() const {
    int t = 0;
    for (const auto& r : routings) t += r.length();
    return t;
}

std::optional<Realized> realize(const Drawing& base, int face, std::span<const Routing> routings) {
    if (static_cast<int>(routings.size()) != base.n_real())
        throw std::invalid_argument("realize: need one routing per vertex");
    const FaceMap fm(base);
    for (int i = 0; i < base.n_real(); ++i) {
        const Routing& r = routings[static_cast<std::size_t>(i)];
        if (r.target != i || r.origin_face != face) throw std::invalid_argument("realize: routing " + std::to_string(i) + " has wrong target or face");
    }
    const Sketch start(base, fm.face(face).dart_cycle.front());
    std::optional<Realized> out;
    Sketch::draw_all(start, routings, [&](Sketch& s) {
        auto res = s.finish();
        out = Realized{std::move(res.drawing), std::move(res.base_dart_of)};
        return true;
    });
    return out;
}

std::optional<Realized> realize(const InsertionCandidate& cand) {
    if (!cand.base) throw std::invalid_argument("realize: candidate without base");
    return realize(*cand.base, cand.face, cand.routings);
}

int face_slack(const RoutingContext& ctx, int face, int c) {
    const Drawing& d = ctx.drawing();
    long long sum = 0;
    for (int w = 0; w < d.n_real(); ++w) sum += ctx.distance(face, w);
    return static_cast<int>(c - d.crossings() - sum);
}

void extend_in_face(const RoutingContext& ctx, int face, int c, const ExtendOptions& opts,
                    const std::function<void(const Extension&)>& sink) {
    const Drawing& base = ctx.drawing();
    const int n = base.n_real();
    const int budget = c - base.crossings();
    const int slack = face_slack(ctx, face, c);
    if (slack < 0) return;
    if (opts.distinct_faces && opts.check_slack && slack > n - 2)
        throw SlackExceeded("face " + std::to_string(face) + " has routing slack " + std::to_string(slack) +
                            " > n-2 = " + std::to_string(n - 2) + "; distinct-faces routing is not provably complete");
    std::vector<std::vector<Routing>> lists(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) {
        auto& l = lists[static_cast<std::size_t>(w)];
        l = enumerate_routings(ctx, face, w, ctx.distance(face, w) + slack, opts.distinct_faces);
        if (l.empty()) return;
        std::stable_sort(l.begin(), l.end(), [](const Routing& a, const Routing& b) { return a.length() < b.length(); });
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return lists[static_cast<std::size_t>(a)].size() < lists[static_cast<std::size_t>(b)].size();
    });
    std::vector<int> suffix_min(static_cast<std::size_t>(n) + 1, 0);
    for (int k = n - 1; k >= 0; --k)
        suffix_min[static_cast<std::size_t>(k)] =
            suffix_min[static_cast<std::size_t>(k) + 1] + lists[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])].front().length();
    if (suffix_min[0] > budget) return;

    const Sketch start(base, ctx.face_map().face(face).dart_cycle.front());
    std::vector<const Routing*> chosen(static_cast<std::size_t>(n), nullptr);
    std::function<void(const Sketch&, int, int)> rec = [&](const Sketch& s, int level, int total) {
        if (level == n) {
            auto res = s.finish();
            Extension ext;
            ext.drawing = std::move(res.drawing);
            ext.base_dart_of = std::move(res.base_dart_of);
            ext.face = face;
            ext.routings.reserve(static_cast<std::size_t>(n));
            for (const Routing* r : chosen) ext.routings.push_back(*r);
            sink(ext);
            return;
        }
        const int w = order[static_cast<std::size_t>(level)];
        for (const Routing& r : lists[static_cast<std::size_t>(w)]) {
            if (total + r.length() + suffix_min[static_cast<std::size_t>(level) + 1] > budget) break;
            chosen[static_cast<std::size_t>(w)] = &r;
            s.draw(r, [&](Sketch& t) {
                rec(t, level + 1, total + r.length());
                return false;
            });
        }
    };
    rec(start, 0, 0);
}

std::vector<int> insertion_faces(const Drawing& base, bool use_orbits) {
    if (use_orbits) return face_orbits(base);
    std::vector<int> all(static_cast<std::size_t>(FaceMap(base).size()));
    std::iota(all.begin(), all.end(), 0);
    return all;
}

void for_each_extension(const Drawing& base, int c, const ExtendOptions& opts,
                        const std::function<void(const Extension&)>& sink) {
    if (base.crossings() > c) return;
    const RoutingContext ctx(base);
    for (int f : insertion_faces(base, opts.use_face_orbits)) extend_in_face(ctx, f, c, opts, sink);
}

std::vector<Drawing> extend_all(const Drawing& base, int c, const ExtendOptions& opts) {
    std::vector<Drawing> out;
    for_each_extension(base, c, opts, [&](const Extension& e) { out.push_back(e.drawing); });
    return out;
}

bool minimality_filter(const Drawing& d, int base_cr, int inserted) {
    if (inserted < 0) inserted = d.n_real() - 1;
    for (int v = 0; v < d.n_real(); ++v) {
        if (v == inserted) continue;
        if (d.crossings() - crossings_at(d, v) < base_cr) return false;
    }
    return true;
}

}  // namespace forge
