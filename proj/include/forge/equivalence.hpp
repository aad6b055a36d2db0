#ifndef FORGE_EQUIVALENCE_HPP
#define FORGE_EQUIVALENCE_HPP

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "forge/drawing.hpp"
#include "forge/extension.hpp"
#include "forge/routing.hpp"

namespace forge {

/// Sorted set of crossed edges of the base drawing.
using EdgeSetKey = std::vector<Edge>;

/// `{1-2,3-4}` with 1-based vertices; `{}` for the empty set.
std::string key_text(const EdgeSetKey& key);

struct EquivalenceClass {
    EdgeSetKey key;
    std::vector<Routing> members;
    int representative = 0;  // index into members

    const Routing& rep() const { return members.at(static_cast<std::size_t>(representative)); }
};

/// Groups routings by crossed-edge set; classes ordered by key, members keep input order.
std::vector<EquivalenceClass> partition_classes(const Drawing& d, std::span<const Routing> routings);

/// Sentinel for select/extend_representatives: prefer the face the new vertex is inserted in.
constexpr int kInsertionFace = -1;

/// First member passing through `preferred`, else the first member.
const Routing& select_representative(const EquivalenceClass& cls, std::optional<int> preferred);
int select_representative_index(const EquivalenceClass& cls, std::optional<int> preferred);

struct ErrorRecord {
    std::string base;  // short hash of the base drawing's canonical code
    int face = 0;
    std::vector<EdgeSetKey> classes;  // by target
};

/// Class products abandoned at the retry limit without an untangled drawing.
class ErrorSet {
public:
    void append(ErrorRecord r) { records_.push_back(std::move(r)); }
    void merge(const ErrorSet& other) { records_.insert(records_.end(), other.records_.begin(), other.records_.end()); }
    const std::vector<ErrorRecord>& records() const { return records_; }
    bool empty() const { return records_.empty(); }
    std::size_t size() const { return records_.size(); }

    /// `E base=<hash> face=<id> classes=<key;key;...>` per record.
    void write(std::ostream& out) const;
    /// Inverse of write; throws std::runtime_error on a malformed line.
    static ErrorRecord parse_line(const std::string& line);

private:
    std::vector<ErrorRecord> records_;
};

/// One drawing per realizable class product.
struct RepresentativeExtension {
    Drawing drawing;
    int face = 0;
    std::vector<Routing> routings;       // by target, as drawn
    std::vector<EdgeSetKey> signature;   // by target
    std::vector<EquivalenceClass> classes;  // the product's classes, by target
    std::vector<int> base_dart_of;
    bool retried = false;  // some representative was replaced to untangle
};

struct RepresentativeOptions {
    ExtendOptions extend;
    // Upper bound on alternative-member draws per class product before giving up.
    int retry_limit = 4096;
};

struct ProductTally {
    std::size_t products = 0;
    std::size_t retried = 0;       // drawn with some non-representative member
    std::size_t unrealizable = 0;  // every member tuple tried, none untangles
    bool clean = true;             // no product abandoned at the retry limit
};

/**
 * Representative extensions of base with the new vertex in `face`. A class
 * product that no member tuple realizes is merely counted: no drawing has
 * it. One abandoned at the retry limit is logged in errors and clears
 * `clean`, meaning the base needs full processing.
 */
ProductTally representatives_in_face(const RoutingContext& ctx, int face, int c, std::optional<int> preferred,
                                     const RepresentativeOptions& opts, ErrorSet& errors,
                                     const std::function<void(RepresentativeExtension&&)>& sink);

struct RepresentativeRun {
    std::vector<RepresentativeExtension> drawings;
    ErrorSet errors;
    bool needs_fallback = false;
    std::size_t unrealizable = 0;
};

/// representatives_in_face over one face per orbit.
RepresentativeRun extend_representatives(const Drawing& base, int c, std::optional<int> preferred = kInsertionFace,
                                         const RepresentativeOptions& opts = {});

/**
 * Draws one member of each class (by target), trying each class's
 * representative first. nullopt when no combination within retry_limit
 * untangles.
 */
std::optional<RepresentativeExtension> realize_classes(const Drawing& base, int face,
                                                       std::span<const EquivalenceClass* const> classes,
                                                       int retry_limit = RepresentativeOptions{}.retry_limit);

}  // namespace forge

#endif
