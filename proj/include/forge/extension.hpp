#ifndef FORGE_EXTENSION_HPP
#define FORGE_EXTENSION_HPP

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "forge/drawing.hpp"
#include "forge/routing.hpp"

namespace forge {

struct ExtendOptions {
    bool distinct_faces = true;
    bool use_face_orbits = true;
    // Refuse faces whose per-edge slack exceeds n-2 while distinct_faces is on:
    // beyond that, routings revisiting a face may be needed.
    bool check_slack = true;
};

/// Raised when a face's routing slack leaves the range where distinct faces suffice.
class SlackExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A new vertex in `face` of `base` with one routing per existing vertex (indexed by target).
struct InsertionCandidate {
    const Drawing* base = nullptr;
    int face = 0;
    std::vector<Routing> routings;

    int total_added() const;
};

struct Realized {
    Drawing drawing;                // K_{n+1}; the new vertex is real vertex n
    std::vector<int> base_dart_of;  // per dart: originating base dart, -1 on new edges
};

/**
 * Draws the routings as edges from a new vertex in the face. Returns nullopt
 * (entangled) when no arrangement keeps the new edges pairwise non-crossing.
 */
std::optional<Realized> realize(const InsertionCandidate& cand);
std::optional<Realized> realize(const Drawing& base, int face, std::span<const Routing> routings);

/// One realized extension together with how it was built.
struct Extension {
    Drawing drawing;
    int face = 0;
    std::vector<Routing> routings;  // indexed by target vertex
    std::vector<int> base_dart_of;
};

/**
 * Streams every realizable extension of base with at most c crossings and the
 * new vertex in the given face: product of routings pruned by running total,
 * targets visited fail-first.
 */
void extend_in_face(const RoutingContext& ctx, int face, int c, const ExtendOptions& opts,
                    const std::function<void(const Extension&)>& sink);

/// extend_in_face over one face per automorphism orbit (or every face).
void for_each_extension(const Drawing& base, int c, const ExtendOptions& opts,
                        const std::function<void(const Extension&)>& sink);

/// All realizable K_{n+1} drawings with at most c crossings over base; not deduplicated.
std::vector<Drawing> extend_all(const Drawing& base, int c, const ExtendOptions& opts = {});

/// Faces of base to try: orbit representatives or all.
std::vector<int> insertion_faces(const Drawing& base, bool use_orbits);

/// Routing slack of a face: c - x(base) - sum of distances.
int face_slack(const RoutingContext& ctx, int face, int c);

/**
 * Keep (true) iff no deletion of a vertex other than `inserted` (default: the
 * last real vertex) leaves fewer crossings than base_cr.
 */
bool minimality_filter(const Drawing& d, int base_cr, int inserted = -1);

}  // namespace forge

#endif
