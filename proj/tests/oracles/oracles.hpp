// Independent reference implementations used only by the tests. None of them
// calls into the routing, sketch, extension or canonical code they check.
#ifndef FORGE_TESTS_ORACLES_HPP
#define FORGE_TESTS_ORACLES_HPP

#include <set>
#include <span>
#include <string>
#include <vector>

#include "forge/drawing.hpp"
#include "forge/routing.hpp"

namespace oracle {

using forge::Drawing;
using forge::Routing;

/// Every dual walk from face to w of length <= max_len (faces may repeat
/// unless distinct_faces) whose crossed edges are distinct and avoid w.
/// Sorted by (crossed, end_dart).
std::vector<Routing> naive_routings(const Drawing& d, int face, int w, int max_len, bool distinct_faces);

/// Smallest length of any naive routing from face to w, or -1 if none within cap.
int naive_distance(const Drawing& d, int face, int w, int cap = 12);

/**
 * Every drawing obtained by drawing the routings (indexed by target) from a
 * new vertex in face, found by trying all orders of crossing points along
 * each shared segment and every slot of the new vertex, keeping assignments
 * whose chords do not interleave inside any face. Normalized, unsorted,
 * possibly with repeats.
 */
std::vector<Drawing> realize_by_orders(const Drawing& base, int face, std::span<const Routing> routings);

/// All drawings of K_{n+1} with at most c crossings over base: every face,
/// every tuple of naive routings, every realization. Labelled text, deduped.
std::set<std::string> naive_extensions(const Drawing& base, int c);

/// Normalized text of every relabelling and mirror image of d.
std::set<std::string> labelled_orbit(const Drawing& d);

/// Isomorphism by trying every real-vertex permutation and both orientations.
bool brute_isomorphic(const Drawing& a, const Drawing& b);

/// Face orbits under automorphisms found by trying every permutation; face id -> smallest id in orbit.
std::vector<int> brute_face_orbits(const Drawing& d);

}  // namespace oracle

#endif
