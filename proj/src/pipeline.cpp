#include "forge/pipeline.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "forge/canonical.hpp"
#include "forge/counting.hpp"
#include "forge/drawing_io.hpp"

namespace forge {

std::string ShardSpec::text() const { return std::to_string(index) + "/" + std::to_string(count); }

ShardSpec ShardSpec::parse(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("shard must look like i/k, got '" + s + "'");
    ShardSpec sh;
    try {
        sh.index = std::stoi(s.substr(0, slash));
        sh.count = std::stoi(s.substr(slash + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("shard must look like i/k, got '" + s + "'");
    }
    if (sh.count < 1 || sh.index < 0 || sh.index >= sh.count) throw std::invalid_argument("shard index out of range: " + s);
    return sh;
}

std::string to_string(Mode m) { return m == Mode::Alg1 ? "alg1" : "alg2"; }

Mode parse_mode(const std::string& s) {
    if (s == "alg1") return Mode::Alg1;
    if (s == "alg2") return Mode::Alg2;
    throw std::invalid_argument("mode must be alg1 or alg2, got '" + s + "'");
}

void StageStats::write(std::ostream& out) const {
    out << "n " << n << '\n'
        << "max_crossings " << max_crossings << '\n'
        << "mode " << to_string(mode) << '\n'
        << "shard " << shard.text() << '\n'
        << "inputs " << inputs << '\n'
        << "processed " << processed << '\n'
        << "resumed " << resumed << '\n'
        << "invalid " << invalid << '\n'
        << "outputs " << outputs << '\n'
        << "error_records " << error_records << '\n'
        << "fallbacks " << fallbacks << '\n'
        << "cpu_seconds " << cpu_seconds << '\n'
        << "wall_seconds " << wall_seconds << '\n';
    for (const auto& [x, count] : histogram) out << "hist " << x << ' ' << count << '\n';
}

StageStats StageStats::read(std::istream& in) {
    StageStats s;
    std::string key;
    while (in >> key) {
        if (key == "n") in >> s.n;
        else if (key == "max_crossings") in >> s.max_crossings;
        else if (key == "mode") { std::string m; in >> m; s.mode = parse_mode(m); }
        else if (key == "shard") { std::string t; in >> t; s.shard = ShardSpec::parse(t); }
        else if (key == "inputs") in >> s.inputs;
        else if (key == "processed") in >> s.processed;
        else if (key == "resumed") in >> s.resumed;
        else if (key == "invalid") in >> s.invalid;
        else if (key == "outputs") in >> s.outputs;
        else if (key == "error_records") in >> s.error_records;
        else if (key == "fallbacks") in >> s.fallbacks;
        else if (key == "cpu_seconds") in >> s.cpu_seconds;
        else if (key == "wall_seconds") in >> s.wall_seconds;
        else if (key == "hist") {
            std::int64_t x = 0;
            std::size_t c = 0;
            in >> x >> c;
            s.histogram[x] = c;
        } else {
            throw std::runtime_error("unknown stats key '" + key + "'");
        }
        if (!in) throw std::runtime_error("malformed value for stats key '" + key + "'");
    }
    return s;
}

namespace {

using Store = std::map<CanonicalCode, Drawing>;

struct UnitResult {
    std::vector<CodedDrawing> found;  // deduplicated within the unit
    ErrorSet errors;
    bool fallback = false;
};

UnitResult process_unit(const Drawing& base, const StageConfig& cfg) {
    const int c = static_cast<int>(cfg.max_crossings);
    Store local;
    auto add = [&](const Drawing& d) {
        CodedDrawing cd = canonicalize(d);
        local.try_emplace(std::move(cd.code), std::move(cd.form));
    };
    UnitResult res;
    if (cfg.mode == Mode::Alg1) {
        for_each_extension(base, c, cfg.extend, [&](const Extension& e) { add(e.drawing); });
    } else {
        RepresentativeOptions ro;
        ro.extend = cfg.extend;
        RepresentativeRun run = extend_representatives(base, c, kInsertionFace, ro);
        for (const auto& e : run.drawings)
            if (minimality_filter(e.drawing, base.crossings())) add(e.drawing);
        if (run.needs_fallback) {
            for_each_extension(base, c, cfg.extend, [&](const Extension& e) {
                if (minimality_filter(e.drawing, base.crossings())) add(e.drawing);
            });
        }
        res.errors = std::move(run.errors);
        res.fallback = run.needs_fallback;
    }
    res.found.reserve(local.size());
    for (auto& [code, form] : local) res.found.push_back({code, std::move(form)});
    return res;
}

double cpu_now() { return static_cast<double>(std::clock()) / CLOCKS_PER_SEC; }

std::vector<Drawing> sorted_forms(Store& store) {
    std::vector<std::pair<const CanonicalCode*, Drawing*>> items;
    items.reserve(store.size());
    for (auto& [code, form] : store) items.push_back({&code, &form});
    std::stable_sort(items.begin(), items.end(),
                     [](const auto& a, const auto& b) { return a.second->crossings() < b.second->crossings(); });
    std::vector<Drawing> out;
    out.reserve(items.size());
    for (auto& [code, form] : items) out.push_back(std::move(*form));
    return out;
}

void fill_output_stats(StageOutput& out, const StageConfig& cfg, std::span<const Drawing> inputs) {
    out.stats.max_crossings = cfg.max_crossings;
    out.stats.mode = cfg.mode;
    out.stats.shard = cfg.shard;
    out.stats.inputs = inputs.size();
    out.stats.n = inputs.empty() ? 0 : inputs.front().n_real() + 1;
    out.stats.outputs = out.drawings.size();
    out.stats.error_records = out.errors.size();
    for (const Drawing& d : out.drawings) ++out.stats.histogram[d.crossings()];
}

std::string checkpoint_header(const StageConfig& cfg) {
    return "# forge checkpoint max_cr=" + std::to_string(cfg.max_crossings) + " mode=" + to_string(cfg.mode) +
           " shard=" + cfg.shard.text();
}

// Blocks of drawing records and error lines, each closed by `# done <input> <fallback>`.
std::map<std::size_t, UnitResult> load_checkpoint(const std::filesystem::path& path, const StageConfig& cfg) {
    std::map<std::size_t, UnitResult> done;
    std::ifstream in(path);
    if (!in) return done;
    std::string line;
    if (!std::getline(in, line)) return done;
    if (line != checkpoint_header(cfg))
        throw std::runtime_error("checkpoint " + path.string() + " belongs to a different stage configuration");
    std::string records;
    ErrorSet errors;
    while (std::getline(in, line)) {
        if (line.rfind("# done ", 0) == 0) {
            std::istringstream fields(line.substr(7));
            std::size_t index = 0;
            int fallback = 0;
            fields >> index >> fallback;
            UnitResult r;
            std::istringstream body(records);
            for (Drawing& d : read_drawings(body)) r.found.push_back(canonicalize(d));
            r.errors = std::move(errors);
            r.fallback = fallback != 0;
            done[index] = std::move(r);
            records.clear();
            errors = ErrorSet{};
        } else if (line.rfind("E ", 0) == 0) {
            errors.append(ErrorSet::parse_line(line));
        } else {
            records += line;
            records += '\n';
        }
    }
    return done;  // a trailing unterminated block is dropped
}

void append_checkpoint(std::ostream& out, std::size_t index, const UnitResult& r) {
    for (const auto& cd : r.found) write_drawing(out, cd.form);
    r.errors.write(out);
    out << "# done " << index << ' ' << (r.fallback ? 1 : 0) << '\n';
}

}  // namespace

StageOutput generate_stage_serial(std::span<const Drawing> inputs, const StageConfig& cfg) {
    const double cpu0 = cpu_now();
    const auto wall0 = std::chrono::steady_clock::now();
    StageOutput out;
    Store store;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (!cfg.shard.owns(i)) continue;
        ++out.stats.processed;
        UnitResult r = process_unit(inputs[i], cfg);
        for (auto& cd : r.found) store.try_emplace(std::move(cd.code), std::move(cd.form));
        out.errors.merge(r.errors);
        out.stats.fallbacks += r.fallback ? 1 : 0;
    }
    out.drawings = sorted_forms(store);
    fill_output_stats(out, cfg, inputs);
    out.stats.cpu_seconds = cpu_now() - cpu0;
    out.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    return out;
}

StageOutput generate_stage(std::span<const Drawing> inputs, const StageConfig& cfg) {
    const double cpu0 = cpu_now();
    const auto wall0 = std::chrono::steady_clock::now();
    StageOutput out;
    Store store;
    std::vector<std::size_t> owned;
    for (std::size_t i = 0; i < inputs.size(); ++i)
        if (cfg.shard.owns(i)) owned.push_back(i);
    out.stats.processed = owned.size();

    std::map<std::size_t, UnitResult> restored;
    std::ofstream ckpt;
    if (!cfg.checkpoint.empty()) {
        restored = load_checkpoint(cfg.checkpoint, cfg);
        // rewrite only the complete blocks, then keep appending
        std::ofstream fresh(cfg.checkpoint, std::ios::trunc);
        fresh << checkpoint_header(cfg) << '\n';
        for (const auto& [index, r] : restored) append_checkpoint(fresh, index, r);
        fresh.close();
        ckpt.open(cfg.checkpoint, std::ios::app);
    }
    std::map<std::size_t, ErrorSet> errors_by_input;
    auto absorb = [&](std::size_t index, UnitResult& r) {
        for (auto& cd : r.found) store.try_emplace(cd.code, cd.form);
        if (!r.errors.empty()) errors_by_input[index] = r.errors;
        out.stats.fallbacks += r.fallback ? 1 : 0;
    };
    std::vector<std::size_t> todo;
    for (std::size_t i : owned) {
        auto it = restored.find(i);
        if (it == restored.end()) {
            todo.push_back(i);
        } else {
            ++out.stats.resumed;
            absorb(i, it->second);
        }
    }

    const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
    const std::size_t batch = static_cast<std::size_t>(std::max(1, cfg.batch_size));
    for (std::size_t start = 0; start < todo.size(); start += batch) {
        const std::size_t stop = std::min(todo.size(), start + batch);
        std::vector<UnitResult> results(stop - start);
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
        for (std::size_t k = start; k < stop; ++k) {
            try {
                results[k - start] = process_unit(inputs[todo[k]], cfg);
            } catch (...) {
#pragma omp critical(forge_stage_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        for (std::size_t k = start; k < stop; ++k) {
            if (ckpt.is_open()) append_checkpoint(ckpt, todo[k], results[k - start]);
            absorb(todo[k], results[k - start]);
        }
        if (ckpt.is_open()) ckpt.flush();
    }
    for (const auto& [i, e] : errors_by_input) out.errors.merge(e);
    out.drawings = sorted_forms(store);
    fill_output_stats(out, cfg, inputs);
    out.stats.cpu_seconds = cpu_now() - cpu0;
    out.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    return out;
}

std::vector<Drawing> merge_outputs(std::span<const std::vector<Drawing>> parts) {
    Store store;
    for (const auto& part : parts)
        for (const Drawing& d : part) {
            CodedDrawing cd = canonicalize(d);
            store.try_emplace(std::move(cd.code), std::move(cd.form));
        }
    return sorted_forms(store);
}

namespace {

void write_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        body(out);
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

StageRun run_stage(const std::filesystem::path& input, const std::filesystem::path& output, const StageConfig& cfg) {
    StageRun run;
    run.input = input;
    run.output = output;
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open " + input.string());
    const auto records = read_records(in);

    // shard ownership follows record numbers in the file, valid or not
    std::vector<Drawing> owned;
    int n = -1;
    std::size_t invalid = 0;
    for (const auto& rec : records) {
        if (!cfg.shard.owns(static_cast<std::size_t>(rec.index))) continue;
        const std::string where = "record " + std::to_string(rec.index) + " (line " + std::to_string(rec.first_line) + "): ";
        if (!rec.drawing) {
            run.input_errors.push_back(where + rec.error);
            ++invalid;
            continue;
        }
        const Drawing& d = *rec.drawing;
        const auto report = validate(d);
        if (!report.ok()) {
            run.input_errors.push_back(where + report.violations.front().kind + ": " + report.violations.front().detail);
            ++invalid;
            continue;
        }
        if (n < 0) n = d.n_real();
        if (d.n_real() != n) {
            run.input_errors.push_back(where + "drawing of K_" + std::to_string(d.n_real()) + " in a K_" +
                                       std::to_string(n) + " file");
            ++invalid;
            continue;
        }
        owned.push_back(d);
    }

    StageConfig inner = cfg;
    inner.shard = ShardSpec{};
    inner.checkpoint = output.string() + ".ckpt";
    StageOutput out = generate_stage(owned, inner);

    write_atomically(output, [&](std::ostream& o) {
        for (const Drawing& d : out.drawings) write_drawing(o, d);
    });
    if (cfg.mode == Mode::Alg2)
        write_atomically(output.string() + ".errors", [&](std::ostream& o) { out.errors.write(o); });
    run.stats = out.stats;
    run.stats.shard = cfg.shard;
    run.stats.inputs = records.size();
    run.stats.invalid = invalid;
    if (n >= 0) run.stats.n = n + 1;
    write_atomically(output.string() + ".stats", [&](std::ostream& o) { run.stats.write(o); });
    std::filesystem::remove(inner.checkpoint);
    return run;
}

std::string stats_table(std::span<const StageStats> runs) {
    std::vector<const StageStats*> order;
    for (const auto& r : runs) order.push_back(&r);
    std::stable_sort(order.begin(), order.end(), [](const StageStats* a, const StageStats* b) {
        return std::tie(a->n, a->shard.index) < std::tie(b->n, b->shard.index);
    });
    std::ostringstream out;
    out << std::left << std::setw(14) << "drawings" << std::right << std::setw(14) << "# drawings" << "  cost of time\n";
    for (const StageStats* r : order) {
        bool first = true;
        for (const auto& [x, count] : r->histogram) {
            std::string name = "D_" + std::to_string(r->n) + "^" + std::to_string(x);
            if (r->shard.count > 1) name += " [" + r->shard.text() + "]";
            out << std::left << std::setw(14) << name << std::right << std::setw(14) << count;
            if (first) out << "  " << std::fixed << std::setprecision(2) << r->cpu_seconds << " s";
            out << '\n';
            first = false;
        }
    }
    return out.str();
}

bool VerifyReport::ok() const { return bad_records() == 0 && file_problems.empty(); }

std::size_t VerifyReport::bad_records() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const RecordReport& r) { return !r.problems.empty(); }));
}

VerifyReport verify_drawings(std::istream& in) {
    VerifyReport rep;
    std::map<int, std::set<int>> parities;  // odd n -> parities seen
    for (const auto& rec : read_records(in)) {
        RecordReport r;
        r.index = rec.index;
        r.first_line = rec.first_line;
        if (!rec.drawing) {
            r.problems.push_back("parse: " + rec.error);
            rep.records.push_back(std::move(r));
            continue;
        }
        const Drawing& d = *rec.drawing;
        r.n = d.n_real();
        r.crossings = d.crossings();
        const auto v = validate(d);
        for (const auto& x : v.violations) r.problems.push_back(x.kind + ": " + x.detail);
        if (v.ok()) {
            const auto pairs = crossing_pairs(d).size();
            if (static_cast<std::int64_t>(pairs) != d.crossings())
                r.problems.push_back("crossings: header says " + std::to_string(d.crossings()) + ", drawing has " +
                                     std::to_string(pairs));
            if (d.n_real() >= 5) {
                const auto [sum, expected] = counting_identity(d);
                if (sum != expected)
                    r.problems.push_back("counting identity: deletions sum to " + std::to_string(sum) + ", expected " +
                                         std::to_string(expected));
            }
            if (d.n_real() >= 5 && d.n_real() % 2 == 1) {
                rep.parity_checked = true;
                parities[d.n_real()].insert(static_cast<int>(d.crossings() % 2));
                if (!parity_ok(d.n_real(), d.crossings()))
                    r.problems.push_back("parity: " + std::to_string(d.crossings()) + " crossings on K_" +
                                         std::to_string(d.n_real()) + " has the wrong parity");
            }
        }
        rep.records.push_back(std::move(r));
    }
    for (const auto& [n, ps] : parities)
        if (ps.size() > 1) rep.file_problems.push_back("parity: K_" + std::to_string(n) + " records have mixed parity");
    return rep;
}

VerifyReport verify_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return verify_drawings(in);
}

void write_report(std::ostream& out, const VerifyReport& r) {
    for (const auto& rec : r.records) {
        out << "record " << rec.index << " line " << rec.first_line;
        if (rec.problems.empty()) {
            out << " ok n=" << rec.n << " x=" << rec.crossings << '\n';
            continue;
        }
        out << " FAIL\n";
        for (const auto& p : rec.problems) out << "  " << p << '\n';
    }
    for (const auto& p : r.file_problems) out << "file: " << p << '\n';
    out << r.records.size() << " records, " << r.bad_records() << " bad" << (r.ok() ? ", ok" : "") << '\n';
}

namespace {

struct CompoundUnit {
    std::size_t mids = 0;
    std::size_t discarded = 0;
    std::size_t hits = 0;
    std::size_t anomalies = 0;
    std::size_t identity_failures = 0;
    bool fallback = false;
    std::vector<std::string> lines;
    ErrorSet errors;
};

// Middle drawings of the fallback path carry their own routing as a one-member class.
RepresentativeExtension as_singletons(const Drawing& base, Extension&& e) {
    RepresentativeExtension r;
    r.drawing = std::move(e.drawing);
    r.face = e.face;
    r.base_dart_of = std::move(e.base_dart_of);
    for (Routing& rt : e.routings) {
        EquivalenceClass cls;
        cls.key = rt.crossed_edges(base);
        cls.members.push_back(rt);
        r.signature.push_back(cls.key);
        r.classes.push_back(std::move(cls));
    }
    r.routings = std::move(e.routings);
    return r;
}

CompoundUnit compound_unit(const Drawing& base, const CompoundConfig& cfg) {
    CompoundUnit u;
    const int c = static_cast<int>(cfg.mid_crossings);
    const int base_faces = FaceMap(base).size();
    auto examine = [&](const RepresentativeExtension& mid) {
        if (!minimality_filter(mid.drawing, base.crossings())) {
            ++u.discarded;
            return;
        }
        ++u.mids;
        const std::string mid_hash = canonical_code(mid.drawing).short_hash();
        for (int f = 0; f < base_faces; ++f) {
            K12StageResult st = run_k12_stage(mid, base, f, cfg.last, cfg.reps);
            u.errors.merge(st.errors);
            for (const FaceVerdict& v : st.verdicts) {
                if (v.kind == VerdictCase::Skip) continue;
                std::ostringstream line;
                write_verdict(line, mid_hash, v);
                std::string text = line.str();
                text.pop_back();
                u.lines.push_back(text + " base_face=" + std::to_string(f) + " mid_face=" + std::to_string(mid.face));
                u.hits += v.hits.size();
                u.anomalies += v.kind == VerdictCase::Anomaly ? 1 : 0;
                u.identity_failures += v.identity_ok ? 0 : 1;
            }
        }
    };
    RepresentativeRun run = extend_representatives(base, c, kInsertionFace, cfg.reps);
    for (const auto& mid : run.drawings) examine(mid);
    u.errors.merge(run.errors);
    if (run.needs_fallback) {
        u.fallback = true;
        for_each_extension(base, c, cfg.reps.extend, [&](const Extension& e) {
            Extension copy = e;
            examine(as_singletons(base, std::move(copy)));
        });
    }
    return u;
}

}  // namespace

CompoundResult run_compound(std::span<const Drawing> bases, const CompoundConfig& cfg) {
    const double cpu0 = cpu_now();
    std::vector<CompoundUnit> units(bases.size());
    std::exception_ptr failure;
    const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::size_t i = 0; i < bases.size(); ++i) {
        try {
            units[i] = compound_unit(bases[i], cfg);
        } catch (...) {
#pragma omp critical(forge_compound_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    CompoundResult res;
    res.bases = bases.size();
    for (auto& u : units) {
        res.mids += u.mids;
        res.mids_discarded += u.discarded;
        res.hits += u.hits;
        res.anomalies += u.anomalies;
        res.identity_failures += u.identity_failures;
        res.fallbacks += u.fallback ? 1 : 0;
        res.verdicts += u.lines.size();
        res.verdict_lines.insert(res.verdict_lines.end(), u.lines.begin(), u.lines.end());
        res.errors.merge(u.errors);
    }
    res.cpu_seconds = cpu_now() - cpu0;
    return res;
}

}  // namespace forge
