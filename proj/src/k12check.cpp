#include "forge/k12check.hpp"

#include <algorithm>
#include <functional>
#include <ostream>

#include "forge/canonical.hpp"

namespace forge {

std::string to_string(VerdictCase c) {
    switch (c) {
        case VerdictCase::Skip: return "skip";
        case VerdictCase::Exact: return "exact";
        case VerdictCase::Reroute: return "reroute";
        case VerdictCase::Anomaly: return "anomaly";
    }
    return "?";
}

namespace {

int incident_count(const EdgeSetKey& key, int v) {
    int k = 0;
    for (const Edge& e : key) k += e.has(v) ? 1 : 0;
    return k;
}

std::vector<std::int64_t> responsibilities(const Drawing& d) {
    std::vector<std::int64_t> r(static_cast<std::size_t>(d.n_real()));
    for (int v = 0; v < d.n_real(); ++v) r[static_cast<std::size_t>(v)] = crossings_at(d, v);
    return r;
}

}  // namespace

std::int64_t subdrawing_crossings(const Drawing& d, std::span<const EdgeSetKey> keys, int v) {
    if (static_cast<int>(keys.size()) != d.n_real()) throw std::invalid_argument("subdrawing_crossings: need one key per vertex");
    std::int64_t total = d.crossings() - crossings_at(d, v);
    for (int w = 0; w < d.n_real(); ++w) {
        if (w == v) continue;
        const auto& k = keys[static_cast<std::size_t>(w)];
        total += static_cast<std::int64_t>(k.size()) - incident_count(k, v);
    }
    return total;
}

std::int64_t subdrawing_crossings(const Drawing& d, std::span<const Routing> routings, int v) {
    std::vector<EdgeSetKey> keys;
    keys.reserve(routings.size());
    for (const Routing& r : routings) keys.push_back(r.crossed_edges(d));
    return subdrawing_crossings(d, keys, v);
}

FaceVerdict check_face(const RoutingContext& ctx, int face, const K12Params& params) {
    const Drawing& d = ctx.drawing();
    const int n = d.n_real();
    FaceVerdict verdict;
    verdict.face = face;
    std::int64_t m = d.crossings();
    for (int w = 0; w < n; ++w) {
        const int dist = ctx.distance(face, w);
        if (dist >= kUnreachable) {
            verdict.minimum = kUnreachable;
            return verdict;
        }
        m += dist;
    }
    verdict.minimum = m;
    if (m > params.target) return verdict;
    if (m < params.target - 1) {
        verdict.kind = VerdictCase::Anomaly;
        return verdict;
    }
    verdict.kind = m == params.target ? VerdictCase::Exact : VerdictCase::Reroute;

    const auto resp = responsibilities(d);
    const std::int64_t expected = static_cast<std::int64_t>(n + 1 - 4) * params.target;
    auto classes_of = [&](int w, int len) {
        auto rs = enumerate_routings(ctx, face, w, len, true);
        std::erase_if(rs, [&](const Routing& r) { return r.length() != len; });
        return partition_classes(d, rs);
    };
    std::vector<std::vector<EquivalenceClass>> geodesic(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) geodesic[static_cast<std::size_t>(w)] = classes_of(w, ctx.distance(face, w));

    // Walks every class product; inc[v] accumulates new-edge crossings with edges at v.
    auto run_products = [&](const std::vector<const std::vector<EquivalenceClass>*>& lists, int rerouted) {
        std::vector<const EdgeSetKey*> chosen(static_cast<std::size_t>(n), nullptr);
        std::vector<std::int64_t> inc(static_cast<std::size_t>(n), 0);
        std::int64_t total_len = 0;
        std::function<void(int)> rec = [&](int w) {
            if (w == n) {
                ++verdict.products;
                std::int64_t sum = d.crossings();  // deleting the new vertex
                for (int v = 0; v < n; ++v) {
                    const auto vi = static_cast<std::size_t>(v);
                    const std::int64_t cr = d.crossings() - resp[vi] + total_len -
                                            static_cast<std::int64_t>(chosen[vi]->size()) - inc[vi];
                    sum += cr;
                    if (cr >= params.threshold) {
                        Hit h;
                        for (const auto* k : chosen) h.product.push_back(*k);
                        h.vertex = v;
                        h.crossings = cr;
                        h.rerouted = rerouted;
                        verdict.hits.push_back(std::move(h));
                    }
                }
                if (sum != expected) verdict.identity_ok = false;
                return;
            }
            for (const EquivalenceClass& cls : *lists[static_cast<std::size_t>(w)]) {
                chosen[static_cast<std::size_t>(w)] = &cls.key;
                total_len += static_cast<std::int64_t>(cls.key.size());
                for (const Edge& e : cls.key) {
                    ++inc[static_cast<std::size_t>(e.a)];
                    ++inc[static_cast<std::size_t>(e.b)];
                }
                rec(w + 1);
                for (const Edge& e : cls.key) {
                    --inc[static_cast<std::size_t>(e.a)];
                    --inc[static_cast<std::size_t>(e.b)];
                }
                total_len -= static_cast<std::int64_t>(cls.key.size());
            }
        };
        rec(0);
    };

    std::vector<const std::vector<EquivalenceClass>*> lists(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) lists[static_cast<std::size_t>(w)] = &geodesic[static_cast<std::size_t>(w)];
    if (verdict.kind == VerdictCase::Exact) {
        run_products(lists, -1);
    } else {
        // one edge takes a single extra crossing; try each in turn
        for (int w = 0; w < n; ++w) {
            const auto longer = classes_of(w, ctx.distance(face, w) + 1);
            if (longer.empty()) continue;
            lists[static_cast<std::size_t>(w)] = &longer;
            run_products(lists, w);
            lists[static_cast<std::size_t>(w)] = &geodesic[static_cast<std::size_t>(w)];
        }
    }
    return verdict;
}

K12StageResult run_k12_stage(const RepresentativeExtension& mid, const Drawing& base, int base_face,
                             const K12Params& params, const RepresentativeOptions& opts) {
    K12StageResult out;
    const int n = base.n_real();
    if (static_cast<int>(mid.classes.size()) != n) throw std::invalid_argument("run_k12_stage: extension without classes");
    std::vector<EquivalenceClass> reselected = mid.classes;
    bool changed = false;
    for (auto& cls : reselected) {
        for (int i = 0; i < static_cast<int>(cls.members.size()); ++i)
            if (cls.members[static_cast<std::size_t>(i)].passes_through(base_face)) {
                changed = changed || i != cls.representative;
                cls.representative = i;
                break;
            }
    }
    const std::vector<int>* provenance = &mid.base_dart_of;
    out.k_mid = mid.drawing;
    std::optional<RepresentativeExtension> rebuilt;
    if (changed) {
        std::vector<const EquivalenceClass*> ptrs;
        for (const auto& cls : reselected) ptrs.push_back(&cls);
        rebuilt = realize_classes(base, mid.face, ptrs, opts.retry_limit);
        if (rebuilt) {
            out.k_mid = rebuilt->drawing;
            provenance = &rebuilt->base_dart_of;
            out.rebuilt = true;
        } else {
            // keep the drawing as first built; the product is reported
            out.errors.append({canonical_code(base).short_hash(), mid.face, mid.signature});
        }
    }

    const FaceMap base_faces(base);
    const RoutingContext ctx(out.k_mid);
    for (const Face& f : ctx.face_map().faces()) {
        bool inside = false;
        for (int g : f.dart_cycle) {
            const int b = (*provenance)[static_cast<std::size_t>(g)];
            if (b >= 0) {
                inside = base_faces.face_of(b) == base_face;
                break;
            }
        }
        if (inside) out.faces.push_back(f.id);
    }
    for (int f : out.faces) out.verdicts.push_back(check_face(ctx, f, params));
    return out;
}

void write_verdict(std::ostream& out, const std::string& mid_hash, const FaceVerdict& v) {
    out << "V k11=" << mid_hash << " face=" << v.face << " m=" << v.minimum << " case=" << to_string(v.kind)
        << " hits=" << v.hits.size() << '\n';
}

}  // namespace forge
