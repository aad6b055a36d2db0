#include "support.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "forge/pipeline.hpp"

namespace fixture {

std::int64_t budget(int n) {
    static const std::map<int, std::int64_t> b{{4, 0}, {5, 1}, {6, 3}, {7, 9}, {8, 20}, {9, 36}};
    return b.at(n);
}

const std::vector<forge::Drawing>& chain(int n) {
    if (n < 4 || n > 8) throw std::out_of_range("fixture chain covers K_4 to K_8");
    static std::mutex mu;
    static std::map<int, std::vector<forge::Drawing>> cache;
    std::lock_guard lock(mu);
    if (cache.empty()) cache[4] = {forge::seed_k4()};
    for (int k = 5; k <= n; ++k) {
        if (cache.count(k)) continue;
        forge::StageConfig cfg;
        cfg.max_crossings = budget(k);
        cache[k] = forge::generate_stage(cache[k - 1], cfg).drawings;
    }
    return cache[n];
}

std::vector<forge::Drawing> chain_at(int n, std::int64_t x) {
    std::vector<forge::Drawing> out;
    for (const auto& d : chain(n))
        if (d.crossings() == x) out.push_back(d);
    return out;
}

const forge::Drawing& optimal_k5() {
    static const forge::Drawing d = chain(5).front();
    return d;
}

}  // namespace fixture
