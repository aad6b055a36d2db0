#ifndef FORGE_CANONICAL_HPP
#define FORGE_CANONICAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_set>
#include <vector>

#include "forge/drawing.hpp"

namespace forge {

/// Relabelling- and reflection-invariant identifier of an unlabelled drawing.
struct CanonicalCode {
    std::vector<std::uint16_t> words;

    std::string hex() const;
    static CanonicalCode from_hex(const std::string& s);
    std::uint64_t hash() const;
    /// 16 hex digits of hash(); short handle for logs.
    std::string short_hash() const;

    auto operator<=>(const CanonicalCode&) const = default;
};

struct CanonicalCodeHash {
    std::size_t operator()(const CanonicalCode& c) const { return static_cast<std::size_t>(c.hash()); }
};

/**
 * Minimum, over root darts and both orientations, of a breadth-first
 * traversal of the planarization: each vertex contributes its colour
 * (real/dummy), degree and the discovery numbers of its neighbours in
 * rotation order starting from the dart it was entered by.
 */
CanonicalCode canonical_code(const Drawing& d);

/// Relabelled copy whose labels follow the minimal traversal; equal for isomorphic drawings.
Drawing canonical_form(const Drawing& d);

struct CodedDrawing {
    CanonicalCode code;
    Drawing form;
};
CodedDrawing canonicalize(const Drawing& d);

struct Automorphism {
    std::vector<int> dart_map;
    bool reverses_orientation = false;
};

/// All automorphisms of the map preserving real/dummy roles (including the identity).
std::vector<Automorphism> automorphisms(const Drawing& d);

/// Face id -> smallest face id in its orbit under automorphisms.
std::vector<int> face_orbit_map(const Drawing& d);

/// One face per orbit (the smallest id), ascending.
std::vector<int> face_orbits(const Drawing& d);

/// Set of codes; one store per worker, merged by union.
class DedupStore {
public:
    /// True iff the code was absent.
    bool insert_if_new(const CanonicalCode& code) { return codes_.insert(code).second; }
    bool contains(const CanonicalCode& code) const { return codes_.count(code) > 0; }
    std::size_t size() const { return codes_.size(); }
    void merge(const DedupStore& other) { codes_.insert(other.codes_.begin(), other.codes_.end()); }

    /// One lowercase hex code per line, sorted.
    void save(std::ostream& out) const;
    static DedupStore load(std::istream& in);

private:
    std::unordered_set<CanonicalCode, CanonicalCodeHash> codes_;
};

bool insert_if_new(DedupStore& store, const CanonicalCode& code);

}  // namespace forge

#endif
