#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>

#include "forge/counting.hpp"
#include "forge/drawing.hpp"
#include "support.hpp"

using namespace forge;

namespace {

// Z(n) from the product formula with no shortcuts.
std::int64_t z_oracle(int n) {
    std::int64_t p = 1;
    for (int k = 0; k < 4; ++k) p *= (n - k) / 2;
    return p / 4;
}

// Profiles by brute force: every multiset of n values in [lo, lo + span] with the right sum.
std::vector<DeletionProfile> profiles_oracle(int n, std::int64_t c, std::int64_t lo) {
    const std::int64_t total = (n - 4) * c;
    const std::int64_t span = total - n * lo;
    std::vector<DeletionProfile> out;
    if (span < 0) return out;
    std::vector<int> mult(static_cast<std::size_t>(span + 1), 0);
    std::function<void(std::size_t, int, std::int64_t)> rec = [&](std::size_t k, int left, std::int64_t sum) {
        if (k == mult.size()) {
            if (left == 0 && sum == total) {
                DeletionProfile p;
                for (std::size_t j = 0; j < mult.size(); ++j)
                    if (mult[j]) p[lo + static_cast<std::int64_t>(j)] = mult[j];
                out.push_back(p);
            }
            return;
        }
        for (int m = 0; m <= left; ++m) {
            mult[k] = m;
            rec(k + 1, left - m, sum + m * (lo + static_cast<std::int64_t>(k)));
        }
        mult[k] = 0;
    };
    rec(0, n, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::int64_t> budgets(const StagePlan& p) {
    std::vector<std::int64_t> out;
    for (auto it = p.stages.rbegin(); it != p.stages.rend(); ++it) out.push_back(it->max_crossings);
    return out;
}

}  // namespace

TEST_CASE("zed matches the product formula") {
    CHECK(zed(4) == 0);
    CHECK(zed(5) == 1);
    CHECK(zed(12) == 150);
    CHECK(zed(13) == 225);
    for (int n = 1; n <= 40; ++n) CHECK(zed(n) == z_oracle(n));
    CHECK_THROWS(zed(0));
}

TEST_CASE("parity follows zed for odd n") {
    CHECK_FALSE(parity_ok(9, 37));
    CHECK(parity_ok(7, 9));
    CHECK(parity_ok(13, 217));
    CHECK_THROWS(parity_ok(8, 18));
    for (int n : {5, 7})
        for (const auto& d : fixture::chain(n)) CHECK(parity_ok(n, d.crossings()));
}

TEST_CASE("stage plan for K13 at 217") {
    const StagePlan on = stage_plan(13, 217, true);
    CHECK(budgets(on) == std::vector<std::int64_t>{217, 151, 100, 63, 36, 20, 9, 3, 1, 0});
    REQUIRE(on.pinned.has_value());
    CHECK(on.pinned->n == 12);
    CHECK(on.pinned->max_crossings == 151);

    const StagePlan off = stage_plan(13, 217, false);
    CHECK(off.find(9)->max_crossings == 37);
    CHECK(off.find(7)->max_crossings == 10);

    const StagePlan tiny = stage_plan(5, 1, true);
    REQUIRE(tiny.find(4));
    CHECK(tiny.find(4)->max_crossings == 0);
    for (const auto& s : on.stages) CHECK(s.min_crossings <= s.max_crossings);
}

TEST_CASE("deletion profiles agree with brute force") {
    const auto p = deletion_profiles(13, 217, 150);
    CHECK(p.size() == 3);
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == profiles_oracle(13, 217, 150));
    CHECK(deletion_profiles(12, 150, 100) == std::vector<DeletionProfile>{{{100, 12}}});
    CHECK(deletion_profiles(8, 18, 9) == std::vector<DeletionProfile>{{{9, 8}}});
    for (const auto& prof : p) {
        int mult = 0;
        std::int64_t sum = 0;
        for (auto [v, k] : prof) {
            mult += k;
            sum += v * k;
        }
        CHECK(mult == 13);
        CHECK(sum == 9 * 217);
    }
}

TEST_CASE("pairwise solver") {
    const auto three = pairwise_solver(13, 217, 3, 100);
    CHECK(three.consistent);
    CHECK(three.high_value == 151);
    CHECK(three.pair_value == 104);
    CHECK_FALSE(pairwise_solver(13, 217, 2, 100).consistent);
}

TEST_CASE("deficiency and the duplication bound") {
    const Drawing& k5 = fixture::optimal_k5();
    CHECK(deficiency(k5) == 0);
    for (int v = 0; v < 5; ++v)
        if (crossings_at(k5, v) == 0) CHECK(duplication_bound(k5, v) == 3);
    std::vector<int> perm{4, 3, 2, 1, 0};
    CHECK(deficiency(relabel(k5, perm)) == 0);
    int last = -1;
    for (int v = 0; v < 5; ++v) {
        // monotone in crossings_at
        if (crossings_at(k5, v) > last) CHECK(duplication_bound(k5, v) >= 3);
        last = crossings_at(k5, v);
    }
}

TEST_CASE("counting identity on every drawing of K5 to K8") {
    for (int n = 5; n <= 8; ++n)
        for (const auto& d : fixture::chain(n)) {
            const auto [sum, expect] = counting_identity(d);
            CHECK(sum == expect);
        }
}

TEST_CASE("optimal K8 drawings are NDP-sharp") {
    const auto opt = fixture::chain_at(8, 18);
    REQUIRE(opt.size() == 3);
    for (const auto& d : opt) {
        const NdpResult r = ndp_check(d);
        CHECK(r.holds);
        for (int v = 0; v < 8; ++v) CHECK(delete_vertex(d, v).crossings() == 9);
        CHECK(std::all_of(r.deletion_deficiency.begin(), r.deletion_deficiency.end(), [](auto x) { return x == 0; }));
    }
    for (const auto& d : fixture::chain_at(8, 20)) CHECK(ndp_check(d).holds);
}
