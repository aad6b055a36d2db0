#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include "forge/equivalence.hpp"
#include "forge/extension.hpp"
#include "forge/k12check.hpp"
#include "support.hpp"

using namespace forge;

namespace {

constexpr K12Params kSmall{19, 12};

using HitKey = std::pair<std::vector<EdgeSetKey>, int>;

std::vector<EdgeSetKey> keys_of(const Drawing& base, const std::vector<Routing>& rs) {
    std::vector<EdgeSetKey> out;
    for (const auto& r : rs) out.push_back(r.crossed_edges(base));
    return out;
}

ExtendOptions everything() {
    ExtendOptions o;
    o.distinct_faces = false;
    o.use_face_orbits = false;
    o.check_slack = false;
    return o;
}

}  // namespace

TEST_CASE("verdict cases follow the face minimum") {
    for (const auto& base : fixture::chain_at(7, 9)) {
        const RoutingContext ctx(base);
        for (int f = 0; f < ctx.num_faces(); ++f) {
            const FaceVerdict v = check_face(ctx, f, kSmall);
            std::int64_t m = base.crossings();
            for (int w = 0; w < 7; ++w) m += ctx.distance(f, w);
            CHECK(v.minimum == m);
            if (m > 19) CHECK(v.kind == VerdictCase::Skip);
            if (m == 19) CHECK(v.kind == VerdictCase::Exact);
            if (m == 18) CHECK(v.kind == VerdictCase::Reroute);
            if (m < 18) CHECK(v.kind == VerdictCase::Anomaly);
            if (v.kind == VerdictCase::Skip || v.kind == VerdictCase::Anomaly) CHECK(v.hits.empty());
            CHECK(v.identity_ok);
        }
    }
    CHECK(to_string(VerdictCase::Exact) == "exact");
    CHECK(to_string(VerdictCase::Reroute) == "reroute");
}

TEST_CASE("combinatorial subdrawing counts equal realized deletions") {
    std::size_t drawings = 0;
    for (const auto& base : fixture::chain_at(7, 9)) {
        const RoutingContext ctx(base);
        for (int f = 0; f < ctx.num_faces(); ++f)
            extend_in_face(ctx, f, 19, everything(), [&](const Extension& e) {
                ++drawings;
                for (int v = 0; v < 8; ++v) {
                    const std::int64_t want = delete_vertex(e.drawing, v).crossings();
                    if (v == 7) CHECK(want == base.crossings());
                    else CHECK(subdrawing_crossings(base, e.routings, v) == want);
                }
            });
    }
    MESSAGE(drawings << " realized K8 drawings checked");
    CHECK(drawings > 0);
}

TEST_CASE("hits match brute-force realization on the K7 to K8 analogue") {
    // 12 is the analogue threshold; lower ones make the comparison non-vacuous
    for (std::int64_t threshold : {12, 11, 10}) {
        const K12Params params{19, threshold};
        std::size_t realized_hits = 0, verdict_hits = 0, faces = 0;
        for (const auto& base : fixture::chain_at(7, 9)) {
            const RoutingContext ctx(base);
            for (int f = 0; f < ctx.num_faces(); ++f) {
                const FaceVerdict v = check_face(ctx, f, params);
                std::set<std::vector<EdgeSetKey>> realizable;
                std::set<HitKey> brute;
                extend_in_face(ctx, f, 19, everything(), [&](const Extension& e) {
                    if (e.drawing.crossings() != 19) return;
                    const auto keys = keys_of(base, e.routings);
                    realizable.insert(keys);
                    for (int v8 = 0; v8 < 7; ++v8)
                        if (delete_vertex(e.drawing, v8).crossings() >= threshold) brute.insert({keys, v8});
                });
                std::set<HitKey> found;
                for (const auto& h : v.hits)
                    if (realizable.count(h.product)) found.insert({h.product, h.vertex});
                if (v.kind == VerdictCase::Exact || v.kind == VerdictCase::Reroute) {
                    CHECK(found == brute);
                    ++faces;
                } else {
                    CHECK(brute.empty());
                }
                realized_hits += brute.size();
                verdict_hits += v.hits.size();
            }
        }
        MESSAGE("threshold " << threshold << ": " << faces << " faces checked, " << realized_hits << " realized hits, "
                              << verdict_hits << " combinatorial hits");
    }
}

TEST_CASE("stage run keeps the middle drawing when nothing passes the base face") {
    const auto bases = fixture::chain_at(6, 3);
    REQUIRE_FALSE(bases.empty());
    const Drawing& base = bases.front();
    const RepresentativeRun run = extend_representatives(base, 9);
    REQUIRE_FALSE(run.drawings.empty());
    const FaceMap fm(base);
    for (const auto& mid : run.drawings) {
        for (int bf = 0; bf < fm.size(); ++bf) {
            const K12StageResult r1 = run_k12_stage(mid, base, bf, {19, 12});
            const K12StageResult r2 = run_k12_stage(mid, base, bf, {19, 12});
            CHECK(r1.k_mid == r2.k_mid);
            CHECK(r1.faces == r2.faces);
            REQUIRE(r1.verdicts.size() == r2.verdicts.size());
            for (std::size_t i = 0; i < r1.verdicts.size(); ++i) CHECK(r1.verdicts[i].hits.size() == r2.verdicts[i].hits.size());
            CHECK(validate(r1.k_mid).ok());
            CHECK(r1.k_mid.crossings() == mid.drawing.crossings());
            bool any_through = false;
            for (const auto& cls : mid.classes)
                for (const auto& m : cls.members) any_through = any_through || m.passes_through(bf);
            if (!any_through) {
                CHECK_FALSE(r1.rebuilt);
                CHECK(r1.k_mid == mid.drawing);
            }
            CHECK_FALSE(r1.faces.empty());
            std::ostringstream out;
            for (const auto& v : r1.verdicts) write_verdict(out, "0123456789abcdef", v);
            if (!r1.verdicts.empty()) CHECK(out.str().rfind("V k11=0123456789abcdef face=", 0) == 0);
        }
    }
}

TEST_CASE("the insertion face splits into one sub-face per new edge") {
    // faces of the middle drawing inside the insertion face: one per new edge
    for (const auto& base : fixture::chain_at(6, 3)) {
        const RepresentativeRun run = extend_representatives(base, 9);
        for (const auto& mid : run.drawings) {
            const K12StageResult r = run_k12_stage(mid, base, mid.face, {19, 12});
            CHECK(r.faces.size() >= 6);
        }
    }
}
