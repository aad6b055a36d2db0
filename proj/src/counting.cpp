#include "forge/counting.hpp"

#include <sstream>
#include <stdexcept>

namespace forge {

std::int64_t zed(int n) {
    if (n < 1) throw std::invalid_argument("zed: n must be >= 1");
    const std::int64_t a = n / 2, b = (n - 1) / 2, c = (n - 2) / 2, d = (n - 3) / 2;
    return a * b * c * d / 4;
}

bool parity_ok(int n, std::int64_t c) {
    if (n < 5 || n % 2 == 0) throw std::invalid_argument("parity_ok: parity theorem covers odd n >= 5 only");
    return ((c - zed(n)) % 2 + 2) % 2 == 0;
}

const Stage* StagePlan::find(int n) const {
    for (const auto& s : stages)
        if (s.n == n) return &s;
    return nullptr;
}

std::map<int, std::int64_t> StagePlanOptions::known_lower_bounds() {
    // cr(K_n) = Z(n) is established for n <= 12 (K_11 by exhaustive search, K_12 by counting).
    std::map<int, std::int64_t> lb;
    for (int n = 4; n <= 12; ++n) lb[n] = zed(n);
    return lb;
}

StagePlan stage_plan(int n_target, std::int64_t c_target, bool use_parity) {
    StagePlanOptions o;
    o.use_parity = use_parity;
    return stage_plan(n_target, c_target, o);
}

StagePlan stage_plan(int n_target, std::int64_t c_target, const StagePlanOptions& opts) {
    if (n_target < 5) throw std::invalid_argument("stage_plan: target must be >= 5");
    StagePlan plan;
    plan.parity = opts.use_parity;
    auto lower = [&](int n) {
        auto it = opts.lower_bounds.find(n);
        return it == opts.lower_bounds.end() ? std::int64_t{0} : it->second;
    };
    std::vector<Stage> desc;
    std::int64_t above = c_target;
    for (int n = n_target - 1; n >= 4; --n) {
        std::int64_t budget = (n + 1 - 4) * above / (n + 1);
        if (opts.use_parity && n % 2 == 1 && n >= 5 && !parity_ok(n, budget)) --budget;
        if (n == n_target - 1 && opts.pin_below_target && n_target % 2 == 1 && c_target < zed(n_target) &&
            lower(n) == zed(n) && !deletion_profiles(n_target, c_target, zed(n)).empty()) {
            budget = zed(n) + 1;
            plan.pinned = Stage{n, budget, budget};
            desc.push_back(*plan.pinned);
            above = budget;
            continue;
        }
        const std::int64_t lo = std::min(lower(n), budget);
        desc.push_back({n, lo, budget});
        above = budget;
    }
    plan.stages.assign(desc.rbegin(), desc.rend());
    plan.stages.push_back({n_target, c_target, c_target});
    return plan;
}

std::string stage_plan_table(const StagePlan& plan) {
    std::ostringstream out;
    out << "# parity=" << (plan.parity ? "on" : "off") << '\n';
    out << "drawings\tmin\tmax\n";
    for (const auto& s : plan.stages) {
        out << "D_" << s.n << '^';
        if (s.min_crossings == s.max_crossings) out << s.max_crossings;
        else out << "<=" << s.max_crossings;
        out << '\t' << s.min_crossings << '\t' << s.max_crossings;
        if (plan.pinned && plan.pinned->n == s.n) out << "\tpinned";
        out << '\n';
    }
    return out.str();
}

std::int64_t deficiency(const Drawing& d) { return d.crossings() - zed(d.n_real()); }

NdpResult ndp_check(const Drawing& d) {
    if (d.n_real() % 2 != 0) throw std::invalid_argument("ndp_check: defined for K_n with n even");
    NdpResult r;
    const std::int64_t bound = 2 * deficiency(d);
    for (int v = 0; v < d.n_real(); ++v) {
        const std::int64_t dv = deficiency(delete_vertex(d, v));
        r.deletion_deficiency.push_back(dv);
        if (dv > bound && r.holds) {
            r.holds = false;
            r.witness = v;
        }
    }
    return r;
}

std::int64_t duplication_bound(const Drawing& d, int v) {
    const int n = d.n_real();
    if (n % 2 == 0) throw std::invalid_argument("duplication_bound: stated for odd n only");
    const std::int64_t h = (n - 1) / 2;
    return d.crossings() + crossings_at(d, v) + 2 * (h * (h - 1) / 2);
}

namespace {

// partitions of `excess` into at most `parts` positive parts, non-increasing
void partitions(std::int64_t excess, int parts, std::int64_t max_part, std::vector<std::int64_t>& cur,
                std::vector<std::vector<std::int64_t>>& out) {
    if (excess == 0) {
        out.push_back(cur);
        return;
    }
    if (parts == 0) return;
    for (std::int64_t p = std::min(excess, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions(excess - p, parts - 1, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<DeletionProfile> deletion_profiles(int n, std::int64_t c, std::int64_t floor_cr) {
    std::vector<DeletionProfile> out;
    if (n < 5) return out;
    const std::int64_t excess = (n - 4) * c - n * floor_cr;
    if (excess < 0) return out;
    std::vector<std::vector<std::int64_t>> parts;
    std::vector<std::int64_t> cur;
    partitions(excess, n, excess, cur, parts);
    for (const auto& p : parts) {
        DeletionProfile prof;
        prof[floor_cr] += n - static_cast<int>(p.size());
        for (auto e : p) prof[floor_cr + e] += 1;
        if (prof[floor_cr] == 0) prof.erase(floor_cr);
        out.push_back(std::move(prof));
    }
    return out;
}

PairwiseSolution pairwise_solver(int n, std::int64_t c, int k, std::int64_t low_value) {
    if (k < 2) throw std::invalid_argument("pairwise_solver: needs at least two high vertices");
    if (n < 6 || k > n) throw std::invalid_argument("pairwise_solver: bad vertex counts");
    PairwiseSolution s;
    const std::int64_t floor_cr = zed(n - 1);
    const std::int64_t rest = (n - 4) * c - (n - k) * floor_cr;
    if (rest % k != 0) {
        s.report = "high deletions share " + std::to_string(rest) + " crossings, not divisible by " + std::to_string(k) +
                   ": the symmetric system has no integer solution";
        return s;
    }
    s.high_value = rest / k;
    if (s.high_value <= floor_cr) {
        s.report = "high deletion value " + std::to_string(s.high_value) + " does not exceed the floor";
        return s;
    }
    const std::int64_t lhs = (n - 5) * s.high_value - (n - k) * low_value;
    if (lhs % (k - 1) != 0) {
        s.report = "pair value " + std::to_string(lhs) + "/" + std::to_string(k - 1) + " is not an integer";
        return s;
    }
    s.pair_value = lhs / (k - 1);
    if (s.pair_value < low_value) {
        s.report = "pair value " + std::to_string(s.pair_value) + " is below the K_{n-2} floor";
        return s;
    }
    s.consistent = true;
    s.report = "cr(D-v_i)=" + std::to_string(s.high_value) + ", cr(D-v_i-v_j)=" + std::to_string(s.pair_value);
    return s;
}

std::pair<std::int64_t, std::int64_t> counting_identity(const Drawing& d) {
    std::int64_t sum = 0;
    for (int v = 0; v < d.n_real(); ++v) sum += delete_vertex(d, v).crossings();
    return {sum, static_cast<std::int64_t>(d.n_real() - 4) * d.crossings()};
}

}  // namespace forge
