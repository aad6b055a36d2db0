#ifndef FORGE_K12CHECK_HPP
#define FORGE_K12CHECK_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "forge/drawing.hpp"
#include "forge/equivalence.hpp"
#include "forge/routing.hpp"

namespace forge {

/// The last-vertex test: drawings of K_{n+1} with `target` crossings over a
/// K_n, looking for a K_n subdrawing with at least `threshold` crossings.
struct K12Params {
    std::int64_t target = 151;
    std::int64_t threshold = 104;
};

enum class VerdictCase { Skip, Exact, Reroute, Anomaly };

std::string to_string(VerdictCase c);

struct Hit {
    std::vector<EdgeSetKey> product;  // crossed-edge class per target
    int vertex = 0;                   // deleted vertex
    std::int64_t crossings = 0;       // cr(D - vertex)
    int rerouted = -1;                // target given one extra crossing, Reroute only
};

struct FaceVerdict {
    int face = 0;
    std::int64_t minimum = 0;  // x + sum of distances
    VerdictCase kind = VerdictCase::Skip;
    std::vector<Hit> hits;
    std::int64_t products = 0;  // class products examined
    bool identity_ok = true;    // counting identity held on every product
};

/**
 * cr(D' - v) for D' = d plus a new vertex joined along the routings (indexed
 * by target): the crossings of d away from v plus the new-edge crossings
 * with edges not at v. No drawing is built.
 */
std::int64_t subdrawing_crossings(const Drawing& d, std::span<const Routing> routings, int v);
std::int64_t subdrawing_crossings(const Drawing& d, std::span<const EdgeSetKey> keys, int v);

FaceVerdict check_face(const RoutingContext& ctx, int face, const K12Params& params = {});

struct K12StageResult {
    Drawing k_mid;          // the middle drawing actually examined (rebuilt if reselected)
    bool rebuilt = false;
    std::vector<int> faces;  // faces of k_mid inside the chosen base face
    std::vector<FaceVerdict> verdicts;
    ErrorSet errors;
};

/**
 * Reselects the middle drawing's representatives to pass through base face
 * `base_face` where possible, rebuilds it, and checks every face lying in
 * `base_face`.
 */
K12StageResult run_k12_stage(const RepresentativeExtension& mid, const Drawing& base, int base_face,
                             const K12Params& params = {}, const RepresentativeOptions& opts = {});

/// `V k11=<hash> face=<id> m=<m> case=<tag> hits=<count>`
void write_verdict(std::ostream& out, const std::string& mid_hash, const FaceVerdict& v);

}  // namespace forge

#endif
