#ifndef FORGE_COUNTING_HPP
#define FORGE_COUNTING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forge/drawing.hpp"

namespace forge {

/// Guy's conjectured crossing number of K_n. Exact integer arithmetic.
std::int64_t zed(int n);

/// Kleitman parity: for odd n >= 5 every good drawing of K_n has x = zed(n) (mod 2).
bool parity_ok(int n, std::int64_t c);

struct Stage {
    int n = 0;
    std::int64_t min_crossings = 0;
    std::int64_t max_crossings = 0;
    auto operator<=>(const Stage&) const = default;
};

struct StagePlan {
    std::vector<Stage> stages;  // ascending n, seed first, target last
    bool parity = true;
    std::optional<Stage> pinned;  // stage fixed by the deletion-profile argument, if any

    const Stage* find(int n) const;
};

struct StagePlanOptions {
    bool use_parity = true;
    // Pin the stage just below an odd target to exactly zed(n-1)+1 when the
    // target undercuts zed(n_target); every other stage follows the counting identity.
    bool pin_below_target = true;
    // Known crossing numbers used as lower bounds; empty = discovery mode.
    std::map<int, std::int64_t> lower_bounds = known_lower_bounds();

    static std::map<int, std::int64_t> known_lower_bounds();
};

/**
 * Per-n crossing budgets descending from (n_target, c_target): the budget for
 * n is floor((n-3) * c_{n+1} / (n+1)), minus one when n is odd and the parity
 * of that value is impossible.
 */
StagePlan stage_plan(int n_target, std::int64_t c_target, bool use_parity);
StagePlan stage_plan(int n_target, std::int64_t c_target, const StagePlanOptions& opts);

/// Table in the layout of the drawing-count table: one row per stage.
std::string stage_plan_table(const StagePlan& plan);

/// cr(D) - Z(n); negative values undercut the conjecture.
std::int64_t deficiency(const Drawing& d);

struct NdpResult {
    bool holds = true;
    int witness = -1;  // first vertex with deficiency(D-v) > 2 deficiency(D)
    std::vector<std::int64_t> deletion_deficiency;
};

/// Normal deficiency property; n_real must be even.
NdpResult ndp_check(const Drawing& d);

/// Crossings after placing a twin of v next to it; n_real must be odd.
std::int64_t duplication_bound(const Drawing& d, int v);

using DeletionProfile = std::map<std::int64_t, int>;  // crossing count -> multiplicity

/// All multisets of n deletion counts >= floor_cr summing to (n-4) c.
std::vector<DeletionProfile> deletion_profiles(int n, std::int64_t c, std::int64_t floor_cr);

struct PairwiseSolution {
    bool consistent = false;
    std::int64_t high_value = 0;  // cr(D - v_i) shared by the k high vertices
    std::int64_t pair_value = 0;  // cr(D - v_i - v_j) for high i != j
    std::string report;
};

/**
 * Solves the symmetric system for k vertices whose deletions exceed the floor:
 * (n-5) cr(D-v_i) = (k-1) y + (n-k) low_value, where cr(D-v_i) follows from the
 * counting identity with the other n-k deletions at floor zed(n-1).
 */
PairwiseSolution pairwise_solver(int n, std::int64_t c, int high_vertices, std::int64_t low_value);

/// sum over v of x(D - v) and the expected (n-4) x.
std::pair<std::int64_t, std::int64_t> counting_identity(const Drawing& d);

}  // namespace forge

#endif
