#include <doctest.h>

#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "forge/canonical.hpp"
#include "forge/drawing.hpp"
#include "forge/drawing_io.hpp"
#include "forge/extension.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

using namespace forge;

namespace {

// Labelled drawings of K_n for n <= 6, many of them isomorphic to each other.
std::vector<Drawing> labelled_pool() {
    ExtendOptions all_faces;
    all_faces.use_face_orbits = false;
    std::vector<Drawing> pool{seed_k4()};
    for (int n = 4; n <= 5; ++n)
        for (const auto& base : fixture::chain(n))
            for (auto& d : extend_all(base, static_cast<int>(fixture::budget(n + 1)) + 1, all_faces)) pool.push_back(d);
    return pool;
}

}  // namespace

TEST_CASE("codes ignore labels and orientation") {
    const Drawing s = seed_k4();
    const CanonicalCode c = canonical_code(s);
    std::vector<int> perm{0, 1, 2, 3};
    do {
        CHECK(canonical_code(relabel(s, perm)) == c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int n = 5; n <= 7; ++n)
        for (const auto& d : fixture::chain(n)) CHECK(canonical_code(mirror(d)) == canonical_code(d));
}

TEST_CASE("code equality matches brute-force isomorphism") {
    const auto pool = labelled_pool();
    std::vector<std::set<std::string>> orbit;
    std::vector<CanonicalCode> code;
    for (const auto& d : pool) {
        orbit.push_back(oracle::labelled_orbit(d));
        code.push_back(canonical_code(d));
    }
    std::size_t iso = 0, pairs = 0;
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = i; j < pool.size(); ++j) {
            const bool brute = pool[i].n_real() == pool[j].n_real() &&
                               orbit[i].count(to_text(normalize(pool[j]))) > 0;
            CHECK((code[i] == code[j]) == brute);
            iso += brute;
            ++pairs;
        }
    MESSAGE(pool.size() << " drawings, " << pairs << " pairs, " << iso << " isomorphic");
    // a handful through the direct brute-force test as well
    CHECK(oracle::brute_isomorphic(pool[1], pool[1]));
}

TEST_CASE("canonical form is a labelled representative of the class") {
    for (int n = 5; n <= 7; ++n)
        for (const auto& d : fixture::chain(n)) {
            const CodedDrawing cd = canonicalize(d);
            CHECK(validate(cd.form).ok());
            CHECK(canonical_code(cd.form) == cd.code);
            std::vector<int> perm(static_cast<std::size_t>(n));
            std::iota(perm.rbegin(), perm.rend(), 0);
            CHECK(canonical_form(relabel(mirror(d), perm)) == cd.form);
        }
}

TEST_CASE("hex codes round trip") {
    for (const auto& d : fixture::chain(6)) {
        const CanonicalCode c = canonical_code(d);
        CHECK(CanonicalCode::from_hex(c.hex()) == c);
        CHECK(c.short_hash().size() == 16);
    }
}

TEST_CASE("face orbits match the brute-force automorphism group") {
    CHECK(face_orbits(seed_k4()).size() == 1);
    for (int n = 4; n <= 6; ++n)
        for (const auto& d : fixture::chain(n)) {
            CHECK(face_orbit_map(d) == oracle::brute_face_orbits(d));
            CHECK(face_orbits(d).size() <= static_cast<std::size_t>(FaceMap(d).size()));
            std::size_t brute = 0;
            std::vector<int> perm(static_cast<std::size_t>(n));
            std::iota(perm.begin(), perm.end(), 0);
            const auto self = to_text(normalize(d));
            const auto orbit = oracle::labelled_orbit(d);
            // the number of label symmetries fixing d
            do {
                brute += to_text(normalize(relabel(d, perm))) == self;
                brute += to_text(normalize(mirror(relabel(d, perm)))) == self;
            } while (std::next_permutation(perm.begin(), perm.end()));
            CHECK(automorphisms(d).size() == brute);
        }
}

TEST_CASE("dedup store") {
    DedupStore s;
    const CanonicalCode c = canonical_code(seed_k4());
    CHECK(s.insert_if_new(c));
    CHECK_FALSE(s.insert_if_new(c));
    DedupStore t;
    t.insert_if_new(canonical_code(fixture::optimal_k5()));
    s.merge(t);
    CHECK(s.size() == 2);
    std::stringstream io;
    s.save(io);
    const DedupStore back = DedupStore::load(io);
    CHECK(back.size() == 2);
    CHECK(back.contains(c));
}

TEST_CASE("K7 to K8 at budget 20 yields 3 + 18 + 88 classes") {
    DedupStore store;
    std::map<int, std::size_t> by_x;
    for (const auto& base : fixture::chain(7))
        for (const auto& d : extend_all(base, 20))
            if (store.insert_if_new(canonical_code(d))) ++by_x[d.crossings()];
    CHECK(by_x[18] == 3);
    CHECK(by_x[19] == 18);
    CHECK(by_x[20] == 88);
    CHECK(store.size() == 109);
}
