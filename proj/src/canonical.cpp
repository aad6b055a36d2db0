#include "forge/canonical.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace forge {

std::string CanonicalCode::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(words.size() * 4);
    for (std::uint16_t w : words)
        for (int shift = 12; shift >= 0; shift -= 4) s.push_back(digits[(w >> shift) & 0xF]);
    return s;
}

CanonicalCode CanonicalCode::from_hex(const std::string& s) {
    if (s.size() % 4 != 0) throw std::invalid_argument("canonical code hex length must be a multiple of 4");
    CanonicalCode c;
    for (std::size_t i = 0; i < s.size(); i += 4) c.words.push_back(static_cast<std::uint16_t>(std::stoul(s.substr(i, 4), nullptr, 16)));
    return c;
}

std::uint64_t CanonicalCode::hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint16_t w : words) {
        h ^= w & 0xFF;
        h *= 1099511628211ULL;
        h ^= w >> 8;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string CanonicalCode::short_hash() const {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    std::uint64_t h = hash();
    for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = digits[h & 0xF];
    return s;
}

namespace {

constexpr std::uint16_t kReal = 1;
constexpr std::uint16_t kDummy = 2;

class Traversal {
public:
    explicit Traversal(const Drawing& d) : d_(d), num_(static_cast<std::size_t>(d.num_vertices()), -1) {}

    // Encodes the traversal rooted at `start`. With `bound`, stops as soon as the
    // code is known to exceed it. Returns <0, 0, >0 as the code compares to bound
    // (always <0 without a bound).
    int run(int start, bool reversed, const std::vector<std::uint16_t>* bound, std::vector<std::uint16_t>& out,
            std::vector<int>* order = nullptr, std::vector<int>* vertex_order = nullptr,
            std::vector<int>* entry = nullptr) {
        out.clear();
        if (order) order->clear();
        if (vertex_order) vertex_order->clear();
        if (entry) entry->clear();
        std::fill(num_.begin(), num_.end(), -1);
        queue_.clear();
        int state = bound ? 0 : -1;
        auto emit = [&](std::uint16_t w) {
            if (state == 0) {
                const std::uint16_t b = (*bound)[out.size()];
                if (w < b) state = -1;
                else if (w > b) state = 1;
            }
            out.push_back(w);
        };
        int count = 0;
        num_[static_cast<std::size_t>(d_.origin(start))] = count++;
        queue_.push_back({d_.origin(start), start});
        for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
            const auto [u, first] = queue_[qi];
            if (vertex_order) vertex_order->push_back(u);
            if (entry) entry->push_back(first);
            emit(d_.is_real(u) ? kReal : kDummy);
            emit(static_cast<std::uint16_t>(d_.degree(u)));
            int g = first;
            do {
                const int t = d_.origin(d_.twin(g));
                if (num_[static_cast<std::size_t>(t)] < 0) {
                    num_[static_cast<std::size_t>(t)] = count++;
                    queue_.push_back({t, d_.twin(g)});
                }
                emit(static_cast<std::uint16_t>(num_[static_cast<std::size_t>(t)]));
                if (order) order->push_back(g);
                g = reversed ? d_.prev(g) : d_.next(g);
            } while (g != first);
            if (state > 0) return 1;
        }
        return state;
    }

private:
    const Drawing& d_;
    std::vector<int> num_;
    std::vector<std::pair<int, int>> queue_;
};

// Root darts: those at real vertices of minimum responsibility.
std::vector<int> root_candidates(const Drawing& d) {
    std::vector<int> resp(static_cast<std::size_t>(d.n_real()), 0);
    for (int x = d.n_real(); x < d.num_vertices(); ++x) {
        const auto [e0, e1] = dummy_edges(d, x);
        ++resp[static_cast<std::size_t>(e0.a)];
        ++resp[static_cast<std::size_t>(e0.b)];
        ++resp[static_cast<std::size_t>(e1.a)];
        ++resp[static_cast<std::size_t>(e1.b)];
    }
    const int best = *std::min_element(resp.begin(), resp.end());
    std::vector<int> roots;
    for (int v = 0; v < d.n_real(); ++v)
        if (resp[static_cast<std::size_t>(v)] == best)
            for (int g : d.rotation(v)) roots.push_back(g);
    return roots;
}

struct Best {
    std::vector<std::uint16_t> code;
    int start = -1;
    bool reversed = false;
};

Best find_best(const Drawing& d, Traversal& t) {
    Best best;
    std::vector<std::uint16_t> buf;
    for (int g : root_candidates(d))
        for (bool rev : {false, true}) {
            const int cmp = t.run(g, rev, best.start < 0 ? nullptr : &best.code, buf);
            if (cmp < 0) {
                best.code.swap(buf);
                best.start = g;
                best.reversed = rev;
            }
        }
    return best;
}

}  // namespace

CanonicalCode canonical_code(const Drawing& d) {
    Traversal t(d);
    return CanonicalCode{find_best(d, t).code};
}

CodedDrawing canonicalize(const Drawing& d) {
    Traversal t(d);
    Best best = find_best(d, t);
    std::vector<std::uint16_t> buf;
    std::vector<int> vorder, entry;
    t.run(best.start, best.reversed, nullptr, buf, nullptr, &vorder, &entry);
    const int n = d.n_real();
    std::vector<int> new_id(static_cast<std::size_t>(d.num_vertices()), -1);
    int next_real = 0;
    int next_dummy = n;
    for (int u : vorder) new_id[static_cast<std::size_t>(u)] = d.is_real(u) ? next_real++ : next_dummy++;
    std::vector<std::vector<HalfEdge>> rot(static_cast<std::size_t>(d.num_vertices()));
    for (std::size_t i = 0; i < vorder.size(); ++i) {
        const int u = vorder[i];
        auto& out = rot[static_cast<std::size_t>(new_id[static_cast<std::size_t>(u)])];
        int g = entry[i];
        do {
            const Edge& e = d.dart(g).edge;
            out.push_back({new_id[static_cast<std::size_t>(d.origin(d.twin(g)))],
                           make_edge(new_id[static_cast<std::size_t>(e.a)], new_id[static_cast<std::size_t>(e.b)])});
            g = best.reversed ? d.prev(g) : d.next(g);
        } while (g != entry[i]);
    }
    return {CanonicalCode{std::move(best.code)}, normalize(build_drawing(n, rot).drawing)};
}

Drawing canonical_form(const Drawing& d) { return canonicalize(d).form; }

std::vector<Automorphism> automorphisms(const Drawing& d) {
    Traversal t(d);
    const Best best = find_best(d, t);
    std::vector<std::uint16_t> buf;
    std::vector<int> ref_order, order;
    t.run(best.start, best.reversed, nullptr, buf, &ref_order);
    std::vector<Automorphism> out;
    for (int g : root_candidates(d))
        for (bool rev : {false, true}) {
            if (t.run(g, rev, &best.code, buf, &order) != 0) continue;
            Automorphism a;
            a.dart_map.assign(static_cast<std::size_t>(d.num_darts()), -1);
            for (std::size_t i = 0; i < ref_order.size(); ++i) a.dart_map[static_cast<std::size_t>(ref_order[i])] = order[i];
            a.reverses_orientation = rev != best.reversed;
            out.push_back(std::move(a));
        }
    return out;
}

std::vector<int> face_orbit_map(const Drawing& d) {
    const FaceMap fm(d);
    std::vector<int> parent(static_cast<std::size_t>(fm.size()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int f) {
        while (parent[static_cast<std::size_t>(f)] != f) f = parent[static_cast<std::size_t>(f)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(f)])];
        return f;
    };
    for (const auto& a : automorphisms(d))
        for (const Face& f : fm.faces()) {
            const int g = a.dart_map[static_cast<std::size_t>(f.dart_cycle.front())];
            const int image = fm.face_of(a.reverses_orientation ? d.twin(g) : g);
            const int r1 = find(f.id), r2 = find(image);
            if (r1 != r2) parent[static_cast<std::size_t>(std::max(r1, r2))] = std::min(r1, r2);
        }
    std::vector<int> out(static_cast<std::size_t>(fm.size()));
    for (int f = 0; f < fm.size(); ++f) out[static_cast<std::size_t>(f)] = find(f);
    return out;
}

std::vector<int> face_orbits(const Drawing& d) {
    const auto m = face_orbit_map(d);
    std::vector<int> reps;
    for (int f = 0; f < static_cast<int>(m.size()); ++f)
        if (m[static_cast<std::size_t>(f)] == f) reps.push_back(f);
    return reps;
}

void DedupStore::save(std::ostream& out) const {
    std::vector<std::string> lines;
    lines.reserve(codes_.size());
    for (const auto& c : codes_) lines.push_back(c.hex());
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) out << l << '\n';
}

DedupStore DedupStore::load(std::istream& in) {
    DedupStore s;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) s.insert_if_new(CanonicalCode::from_hex(line));
    return s;
}

bool insert_if_new(DedupStore& store, const CanonicalCode& code) { return store.insert_if_new(code); }

}  // namespace forge
