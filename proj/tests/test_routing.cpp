#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "forge/drawing.hpp"
#include "forge/routing.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

using namespace forge;

namespace {

std::vector<Drawing> up_to_k6() {
    std::vector<Drawing> all;
    for (int n = 4; n <= 6; ++n)
        for (const auto& d : fixture::chain(n)) all.push_back(d);
    return all;
}

bool same_routings(std::vector<Routing> a, std::vector<Routing> b) {
    auto key = [](const Routing& r) { return std::tie(r.crossed, r.end_dart); };
    auto less = [&](const Routing& x, const Routing& y) { return key(x) < key(y); };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].crossed != b[i].crossed || a[i].end_dart != b[i].end_dart || a[i].faces != b[i].faces) return false;
    return true;
}

}  // namespace

TEST_CASE("dual graph shape") {
    const DualGraph s = dual(seed_k4());
    CHECK(s.num_nodes() == 4);
    CHECK(s.num_arcs() == 6);
    const DualGraph k5 = dual(fixture::optimal_k5());
    CHECK(k5.num_nodes() == 8);
    CHECK(k5.num_arcs() == 12);
    for (const auto& d : up_to_k6()) {
        const FaceMap fm(d);
        const DualGraph g = dual(d, fm);
        CHECK(g.num_arcs() == d.num_darts() / 2);
        for (int f = 0; f < g.num_nodes(); ++f)
            for (const auto& a : g.incidence[static_cast<std::size_t>(f)]) {
                CHECK(a.opposite != f);  // no bridges
                CHECK(fm.face_of(a.dart) == f);
                const auto& back = g.incidence[static_cast<std::size_t>(a.opposite)];
                CHECK(std::any_of(back.begin(), back.end(), [&](const DualArc& b) { return b.segment == a.segment; }));
            }
    }
}

TEST_CASE("distances on the seed") {
    const Drawing s = seed_k4();
    const RoutingContext ctx(s);
    for (int f = 0; f < ctx.num_faces(); ++f) {
        int sum = 0;
        for (int w = 0; w < 4; ++w) {
            const int dist = ctx.distance(f, w);
            CHECK(dist == (ctx.on_face(f, w) ? 0 : 1));
            sum += dist;
        }
        CHECK(sum == 1);
    }
}

TEST_CASE("distances match iterative deepening") {
    for (const auto& d : up_to_k6()) {
        const RoutingContext ctx(d);
        for (int f = 0; f < ctx.num_faces(); ++f)
            for (int w = 0; w < d.n_real(); ++w) CHECK(ctx.distance(f, w) == oracle::naive_distance(d, f, w));
    }
}

TEST_CASE("routing enumerator equals the naive dual walk up to slack 3") {
    std::size_t compared = 0, revisiting = 0;
    for (const auto& d : up_to_k6()) {
        const RoutingContext ctx(d);
        for (int f = 0; f < ctx.num_faces(); ++f)
            for (int w = 0; w < d.n_real(); ++w) {
                const int dist = ctx.distance(f, w);
                for (int slack = 0; slack <= 3; ++slack)
                    for (bool distinct : {true, false}) {
                        const auto got = enumerate_routings(ctx, f, w, dist + slack, distinct);
                        const auto want = oracle::naive_routings(d, f, w, dist + slack, distinct);
                        CAPTURE(f);
                        CAPTURE(w);
                        CAPTURE(slack);
                        CHECK(same_routings(got, want));
                        for (const auto& r : got) CHECK(check_routing(ctx, r, distinct).empty());
                        if (!distinct) revisiting += got.size() - enumerate_routings(ctx, f, w, dist + slack, true).size();
                        ++compared;
                    }
            }
    }
    MESSAGE(compared << " enumerations compared; " << revisiting << " routings revisit a face");
}

TEST_CASE("geodesic bound returns only shortest routings") {
    for (const auto& d : fixture::chain(5)) {
        const RoutingContext ctx(d);
        for (int f = 0; f < ctx.num_faces(); ++f)
            for (int w = 0; w < 5; ++w)
                for (const auto& r : enumerate_routings(ctx, f, w, ctx.distance(f, w), true))
                    CHECK(r.length() == ctx.distance(f, w));
    }
}

TEST_CASE("routing counts do not depend on labels") {
    const Drawing& d = fixture::chain(6).front();
    const std::vector<int> perm{3, 5, 0, 1, 4, 2};
    const Drawing r = relabel(d, perm);
    auto totals = [](const Drawing& x) {
        std::vector<std::size_t> out;
        const RoutingContext ctx(x);
        for (int f = 0; f < ctx.num_faces(); ++f)
            for (int w = 0; w < x.n_real(); ++w) out.push_back(enumerate_routings(ctx, f, w, 3, true).size());
        std::sort(out.begin(), out.end());
        return out;
    };
    CHECK(totals(d) == totals(r));
}

TEST_CASE("routing dump format") {
    const Drawing s = seed_k4();
    const RoutingContext ctx(s);
    int far_face = -1, far = -1;
    for (int f = 0; f < ctx.num_faces() && far < 0; ++f)
        for (int w = 0; w < 4; ++w)
            if (!ctx.on_face(f, w)) far_face = f, far = w;
    REQUIRE(far >= 0);
    const auto rs = enumerate_routings(ctx, far_face, far, 1, true);
    REQUIRE(rs.size() == 3);
    std::ostringstream out;
    dump_routing(out, s, rs.front());
    CHECK(out.str().rfind("R F=", 0) == 0);
    CHECK(out.str().find("len=1") != std::string::npos);
}
