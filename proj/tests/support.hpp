// Shared fixtures for the test binaries.
#ifndef FORGE_TESTS_SUPPORT_HPP
#define FORGE_TESTS_SUPPORT_HPP

#include <cstdint>
#include <vector>

#include "forge/drawing.hpp"

namespace fixture {

/// Budget of D_n in the K_13 plan: 0, 1, 3, 9, 20, 36 for n = 4..9.
std::int64_t budget(int n);

/// Every drawing of K_n (4 <= n <= 8) up to its budget, canonical forms,
/// sorted by (crossings, code). Built once per process from the seed.
const std::vector<forge::Drawing>& chain(int n);

/// Drawings of K_n with exactly x crossings.
std::vector<forge::Drawing> chain_at(int n, std::int64_t x);

/// The one drawing of K_5 with a crossing.
const forge::Drawing& optimal_k5();

}  // namespace fixture

#endif
