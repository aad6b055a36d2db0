#include "forge/equivalence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "forge/canonical.hpp"
#include "forge/sketch.hpp"

namespace forge {

std::string key_text(const EdgeSetKey& key) {
    std::string s = "{";
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(key[i].a + 1) + '-' + std::to_string(key[i].b + 1);
    }
    return s + '}';
}

std::vector<EquivalenceClass> partition_classes(const Drawing& d, std::span<const Routing> routings) {
    std::map<EdgeSetKey, EquivalenceClass> by_key;
    for (const Routing& r : routings) {
        EdgeSetKey k = r.crossed_edges(d);
        auto& cls = by_key[k];
        if (cls.members.empty()) cls.key = std::move(k);
        cls.members.push_back(r);
    }
    std::vector<EquivalenceClass> out;
    out.reserve(by_key.size());
    for (auto& [k, cls] : by_key) out.push_back(std::move(cls));
    return out;
}

int select_representative_index(const EquivalenceClass& cls, std::optional<int> preferred) {
    if (cls.members.empty()) throw std::invalid_argument("select_representative: empty class");
    if (preferred) {
        for (std::size_t i = 0; i < cls.members.size(); ++i) {
            const Routing& r = cls.members[i];
            const int face = *preferred == kInsertionFace ? r.origin_face : *preferred;
            if (r.passes_through(face)) return static_cast<int>(i);
        }
    }
    return 0;
}

const Routing& select_representative(const EquivalenceClass& cls, std::optional<int> preferred) {
    return cls.members[static_cast<std::size_t>(select_representative_index(cls, preferred))];
}

void ErrorSet::write(std::ostream& out) const {
    for (const auto& r : records_) {
        out << "E base=" << r.base << " face=" << r.face << " classes=";
        for (std::size_t i = 0; i < r.classes.size(); ++i) out << (i ? ";" : "") << key_text(r.classes[i]);
        out << '\n';
    }
}

ErrorRecord ErrorSet::parse_line(const std::string& line) {
    std::istringstream in(line);
    std::string tag, base, face, classes;
    in >> tag >> base >> face >> classes;
    if (tag != "E" || base.rfind("base=", 0) != 0 || face.rfind("face=", 0) != 0 || classes.rfind("classes=", 0) != 0)
        throw std::runtime_error("malformed error record '" + line + "'");
    ErrorRecord r;
    r.base = base.substr(5);
    r.face = std::stoi(face.substr(5));
    std::istringstream keys(classes.substr(8));
    std::string k;
    while (std::getline(keys, k, ';')) {
        if (k.size() < 2 || k.front() != '{' || k.back() != '}') throw std::runtime_error("malformed class key '" + k + "'");
        EdgeSetKey key;
        std::istringstream edges(k.substr(1, k.size() - 2));
        std::string e;
        while (std::getline(edges, e, ',')) {
            const auto dash = e.find('-');
            if (dash == std::string::npos) throw std::runtime_error("malformed edge '" + e + "'");
            key.push_back(make_edge(std::stoi(e.substr(0, dash)) - 1, std::stoi(e.substr(dash + 1)) - 1));
        }
        r.classes.push_back(std::move(key));
    }
    return r;
}

namespace {

// `gave_up` is set when the retry limit cut the search short.
std::optional<RepresentativeExtension> realize_from(const Sketch& start, int face,
                                                    std::span<const EquivalenceClass* const> classes, int retry_limit,
                                                    bool* gave_up = nullptr) {
    const std::size_t n = classes.size();
    // member try order per class: representative first
    std::vector<std::vector<int>> tries(n);
    std::vector<int> rep(n);
    for (std::size_t w = 0; w < n; ++w) {
        rep[w] = classes[w]->representative;
        tries[w].push_back(rep[w]);
        for (int i = 0; i < static_cast<int>(classes[w]->members.size()); ++i)
            if (i != rep[w]) tries[w].push_back(i);
    }
    std::vector<int> used(n, -1);
    std::optional<RepresentativeExtension> out;
    int draws = 0;
    std::function<bool(const Sketch&, std::size_t)> rec = [&](const Sketch& s, std::size_t level) -> bool {
        if (level == n) {
            auto res = s.finish();
            RepresentativeExtension ext;
            ext.drawing = std::move(res.drawing);
            ext.base_dart_of = std::move(res.base_dart_of);
            ext.face = face;
            for (std::size_t w = 0; w < n; ++w) {
                ext.routings.push_back(classes[w]->members[static_cast<std::size_t>(used[w])]);
                ext.signature.push_back(classes[w]->key);
                ext.retried = ext.retried || used[w] != rep[w];
            }
            out = std::move(ext);
            return true;
        }
        for (int i : tries[level]) {
            // the first try of every class is free; only alternatives count against the limit
            if (i != rep[level] && ++draws > retry_limit) {
                if (gave_up) *gave_up = true;
                return false;
            }
            used[level] = i;
            const Routing& r = classes[level]->members[static_cast<std::size_t>(i)];
            if (s.draw(r, [&](Sketch& t) { return rec(t, level + 1); })) return true;
        }
        return false;
    };
    rec(start, 0);
    if (out) {
        out->classes.reserve(n);
        for (std::size_t w = 0; w < n; ++w) {
            out->classes.push_back(*classes[w]);
            out->classes.back().representative = used[w];
        }
    }
    return out;
}

}  // namespace

std::optional<RepresentativeExtension> realize_classes(const Drawing& base, int face,
                                                       std::span<const EquivalenceClass* const> classes, int retry_limit) {
    if (static_cast<int>(classes.size()) != base.n_real())
        throw std::invalid_argument("realize_classes: need one class per vertex");
    const FaceMap fm(base);
    const Sketch start(base, fm.face(face).dart_cycle.front());
    return realize_from(start, face, classes, retry_limit);
}

ProductTally representatives_in_face(const RoutingContext& ctx, int face, int c, std::optional<int> preferred,
                                     const RepresentativeOptions& opts, ErrorSet& errors,
                                     const std::function<void(RepresentativeExtension&&)>& sink) {
    ProductTally tally;
    const Drawing& base = ctx.drawing();
    const int n = base.n_real();
    const int budget = c - base.crossings();
    const int slack = face_slack(ctx, face, c);
    if (slack < 0) return tally;
    if (opts.extend.distinct_faces && opts.extend.check_slack && slack > n - 2)
        throw SlackExceeded("face " + std::to_string(face) + " has routing slack " + std::to_string(slack) +
                            " > n-2 = " + std::to_string(n - 2));
    std::vector<std::vector<EquivalenceClass>> classes(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) {
        const auto rs = enumerate_routings(ctx, face, w, ctx.distance(face, w) + slack, opts.extend.distinct_faces);
        auto& cl = classes[static_cast<std::size_t>(w)];
        cl = partition_classes(base, rs);
        if (cl.empty()) return tally;
        for (auto& k : cl) k.representative = select_representative_index(k, preferred);
        std::stable_sort(cl.begin(), cl.end(),
                         [](const EquivalenceClass& a, const EquivalenceClass& b) { return a.key.size() < b.key.size(); });
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return classes[static_cast<std::size_t>(a)].size() < classes[static_cast<std::size_t>(b)].size();
    });
    std::vector<int> suffix_min(static_cast<std::size_t>(n) + 1, 0);
    for (int k = n - 1; k >= 0; --k)
        suffix_min[static_cast<std::size_t>(k)] =
            suffix_min[static_cast<std::size_t>(k) + 1] +
            static_cast<int>(classes[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])].front().key.size());
    if (suffix_min[0] > budget) return tally;

    const Sketch start(base, ctx.face_map().face(face).dart_cycle.front());
    const std::string base_hash = canonical_code(base).short_hash();
    std::vector<const EquivalenceClass*> chosen(static_cast<std::size_t>(n), nullptr);
    std::function<void(int, int)> rec = [&](int level, int total) {
        if (level == n) {
            ++tally.products;
            bool gave_up = false;
            auto ext = realize_from(start, face, chosen, opts.retry_limit, &gave_up);
            if (ext) {
                tally.retried += ext->retried;
                sink(std::move(*ext));
            } else if (!gave_up) {
                // no member tuple untangles: no drawing has this product
                ++tally.unrealizable;
            } else {
                ErrorRecord er;
                er.base = base_hash;
                er.face = face;
                for (const auto* k : chosen) er.classes.push_back(k->key);
                errors.append(std::move(er));
                tally.clean = false;
            }
            return;
        }
        const int w = order[static_cast<std::size_t>(level)];
        for (const EquivalenceClass& k : classes[static_cast<std::size_t>(w)]) {
            const int len = static_cast<int>(k.key.size());
            if (total + len + suffix_min[static_cast<std::size_t>(level) + 1] > budget) break;
            chosen[static_cast<std::size_t>(w)] = &k;
            rec(level + 1, total + len);
        }
    };
    rec(0, 0);
    return tally;
}

RepresentativeRun extend_representatives(const Drawing& base, int c, std::optional<int> preferred,
                                         const RepresentativeOptions& opts) {
    RepresentativeRun run;
    if (base.crossings() > c) return run;
    const RoutingContext ctx(base);
    for (int f : insertion_faces(base, opts.extend.use_face_orbits)) {
        const ProductTally t = representatives_in_face(ctx, f, c, preferred, opts, run.errors,
                                                       [&](RepresentativeExtension&& e) { run.drawings.push_back(std::move(e)); });
        run.needs_fallback = run.needs_fallback || !t.clean;
        run.unrealizable += t.unrealizable;
    }
    return run;
}

}  // namespace forge
