// forge: batch driver for the drawing enumeration stages.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "forge/canonical.hpp"
#include "forge/counting.hpp"
#include "forge/drawing.hpp"
#include "forge/drawing_io.hpp"
#include "forge/pipeline.hpp"

namespace fs = std::filesystem;
using namespace forge;

namespace {

constexpr int kClean = 0;
constexpr int kInputError = 1;
constexpr int kArtifacts = 2;

int cmd_seed(const std::string& out) {
    write_drawings_file(out, {seed_k4()});
    std::cout << "wrote K_4 seed to " << out << '\n';
    return kClean;
}

struct GenerateArgs {
    std::string from, out, mode = "alg1", shard = "0/1";
    int n = 0;
    long long max_cr = -1;
    bool no_parity = false, no_distinct_faces = false, no_orbits = false;
    int threads = 0;
};

int cmd_generate(const GenerateArgs& a) {
    StageConfig cfg;
    cfg.mode = parse_mode(a.mode);
    cfg.shard = ShardSpec::parse(a.shard);
    cfg.extend.distinct_faces = !a.no_distinct_faces;
    cfg.extend.use_face_orbits = !a.no_orbits;
    cfg.threads = a.threads;
    if (a.max_cr >= 0) {
        cfg.max_crossings = a.max_cr;
    } else {
        const StagePlan plan = stage_plan(13, 217, !a.no_parity);
        const Stage* st = plan.find(a.n);
        if (!st) {
            std::cerr << "no budget for n=" << a.n << " in the default plan; pass --max-cr\n";
            return kInputError;
        }
        cfg.max_crossings = st->max_crossings;
    }
    const StageRun run = run_stage(a.from, a.out, cfg);
    for (const auto& e : run.input_errors) std::cerr << "skipped " << e << '\n';
    if (run.stats.processed > 0 && run.stats.n != a.n) {
        std::cerr << "input drawings have " << run.stats.n - 1 << " vertices; --n " << a.n << " needs " << a.n - 1 << '\n';
        return kInputError;
    }
    std::vector<StageStats> one{run.stats};
    std::cout << stats_table(one);
    std::cout << run.stats.outputs << " drawings written to " << a.out << " (" << run.stats.processed << " inputs, "
              << run.stats.fallbacks << " fallbacks, " << run.stats.error_records << " error records)\n";
    if (!run.input_errors.empty()) return kInputError;
    return run.stats.error_records > 0 ? kArtifacts : kClean;
}

struct CheckArgs {
    std::string k10, report;
    long long mid_cr = 100, target = 151, threshold = 104;
    int threads = 0;
};

int cmd_k12check(const CheckArgs& a) {
    std::ifstream in(a.k10);
    if (!in) {
        std::cerr << "cannot open " << a.k10 << '\n';
        return kInputError;
    }
    std::vector<Drawing> bases;
    int bad = 0;
    for (auto& rec : read_records(in)) {
        if (!rec.drawing || !validate(*rec.drawing).ok()) {
            std::cerr << "skipped record " << rec.index << " (line " << rec.first_line << ")\n";
            ++bad;
            continue;
        }
        bases.push_back(std::move(*rec.drawing));
    }
    CompoundConfig cfg;
    cfg.mid_crossings = a.mid_cr;
    cfg.last.target = a.target;
    cfg.last.threshold = a.threshold;
    cfg.threads = a.threads;
    const CompoundResult res = run_compound(bases, cfg);
    auto emit = [&](std::ostream& o) {
        for (const auto& l : res.verdict_lines) o << l << '\n';
        res.errors.write(o);
    };
    if (!a.report.empty()) {
        std::ofstream rep(a.report);
        emit(rep);
    } else {
        emit(std::cout);
    }
    std::cout << "bases=" << res.bases << " middle=" << res.mids << " discarded=" << res.mids_discarded
              << " verdicts=" << res.verdicts << " hits=" << res.hits << " anomalies=" << res.anomalies
              << " identity_failures=" << res.identity_failures << " error_records=" << res.errors.size()
              << " fallbacks=" << res.fallbacks << " cpu_seconds=" << res.cpu_seconds << '\n';
    if (res.hits > 0)
        std::cout << "hit: some " << a.target << "-crossing extension has a subdrawing with at least " << a.threshold
                  << " crossings; see the verdict log\n";
    else if (res.anomalies > 0)
        std::cout << "anomaly: some face admits fewer than " << a.target - 1 << " crossings\n";
    else
        std::cout << "no hits over " << res.bases << " base drawings\n";
    if (bad > 0) return kInputError;
    return res.clean() ? kClean : kArtifacts;
}

int cmd_verify(const std::string& path) {
    const VerifyReport r = verify_file(path);
    write_report(std::cout, r);
    return r.ok() ? kClean : kInputError;
}

int cmd_canon(const std::string& path, bool forms) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << '\n';
        return kInputError;
    }
    int status = kClean;
    for (auto& rec : read_records(in)) {
        if (!rec.drawing) {
            std::cerr << "record " << rec.index << ": " << rec.error << '\n';
            status = kInputError;
            continue;
        }
        const CodedDrawing cd = canonicalize(*rec.drawing);
        if (forms) write_drawing(std::cout, cd.form);
        else std::cout << rec.index << ' ' << cd.code.short_hash() << ' ' << cd.code.hex() << '\n';
    }
    return status;
}

int cmd_stats(const std::vector<std::string>& paths) {
    std::vector<StageStats> runs;
    auto load = [&](const fs::path& p) {
        std::ifstream in(p);
        runs.push_back(StageStats::read(in));
    };
    for (const auto& p : paths) {
        if (fs::is_directory(p)) {
            std::vector<fs::path> files;
            for (const auto& e : fs::directory_iterator(p))
                if (e.path().extension() == ".stats") files.push_back(e.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) load(f);
        } else if (fs::exists(p)) {
            load(p);
        } else {
            std::cerr << "no such run directory " << p << '\n';
            return kInputError;
        }
    }
    std::cout << stats_table(runs);
    return kClean;
}

int cmd_plan(int n, long long c, bool no_parity) {
    std::cout << stage_plan_table(stage_plan(n, c, !no_parity));
    return kClean;
}

int cmd_merge(const std::vector<std::string>& inputs, const std::string& out) {
    std::vector<std::vector<Drawing>> parts;
    for (const auto& p : inputs) parts.push_back(read_drawings_file(p));
    const auto merged = merge_outputs(parts);
    write_drawings_file(out, merged);
    std::cout << merged.size() << " drawings written to " << out << '\n';
    return kClean;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Enumerates good drawings of complete graphs stage by stage"};
    app.require_subcommand(1);

    std::string seed_out;
    auto* seed = app.add_subcommand("seed", "Write the K_4 seed drawing");
    seed->add_option("--out", seed_out, "Output file")->required();

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Extend every drawing of an input file by one vertex");
    generate->add_option("--from", gen.from, "Input drawings of K_{n-1}")->required()->check(CLI::ExistingFile);
    generate->add_option("--n", gen.n, "Vertices of the generated drawings")->required()->check(CLI::Range(5, 64));
    generate->add_option("--max-cr", gen.max_cr, "Crossing budget (default: plan for K_13 at 217)");
    generate->add_option("--mode", gen.mode, "alg1 (all drawings) or alg2 (class representatives)")
        ->check(CLI::IsMember({"alg1", "alg2"}));
    generate->add_option("--shard", gen.shard, "Shard i/k of the input records");
    generate->add_option("--out", gen.out, "Output file")->required();
    generate->add_option("--threads", gen.threads, "Worker threads (0: all)");
    generate->add_flag("--no-parity", gen.no_parity, "Plan budgets without the parity rule");
    generate->add_flag("--no-distinct-faces", gen.no_distinct_faces, "Allow routings to revisit faces");
    generate->add_flag("--no-orbits", gen.no_orbits, "Try every face instead of one per orbit");

    CheckArgs chk;
    auto* k12 = app.add_subcommand("k12check", "Search the last two stages for a heavy subdrawing");
    k12->add_option("--k10", chk.k10, "Base drawings")->required()->check(CLI::ExistingFile);
    k12->add_option("--report", chk.report, "Verdict log file (default: stdout)");
    k12->add_option("--mid-cr", chk.mid_cr, "Crossings of the middle drawings");
    k12->add_option("--target", chk.target, "Crossings of the final drawings");
    k12->add_option("--threshold", chk.threshold, "Subdrawing crossings that count as a hit");
    k12->add_option("--threads", chk.threads, "Worker threads (0: all)");

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "Validate every record of a drawing file");
    verify->add_option("file", verify_path)->required();

    std::string canon_path;
    bool canon_forms = false;
    auto* canon = app.add_subcommand("canon", "Print canonical codes (or forms) of a drawing file");
    canon->add_option("file", canon_path)->required();
    canon->add_flag("--forms", canon_forms, "Print canonical forms as drawing records");

    std::vector<std::string> stats_paths;
    auto* stats = app.add_subcommand("stats", "Tabulate .stats files of run directories");
    stats->add_option("dirs", stats_paths)->required();

    int plan_n = 13;
    long long plan_c = 217;
    bool plan_no_parity = false;
    auto* plan = app.add_subcommand("plan", "Print per-stage crossing budgets");
    plan->add_option("--target-n", plan_n)->check(CLI::Range(5, 64));
    plan->add_option("--target-cr", plan_c);
    plan->add_flag("--no-parity", plan_no_parity);

    std::vector<std::string> merge_inputs;
    std::string merge_out;
    auto* merge = app.add_subcommand("merge", "Union and deduplicate shard outputs");
    merge->add_option("inputs", merge_inputs)->required();
    merge->add_option("--out", merge_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kClean : kInputError;
    }

    try {
        if (*seed) return cmd_seed(seed_out);
        if (*generate) return cmd_generate(gen);
        if (*k12) return cmd_k12check(chk);
        if (*verify) return cmd_verify(verify_path);
        if (*canon) return cmd_canon(canon_path, canon_forms);
        if (*stats) return cmd_stats(stats_paths);
        if (*plan) return cmd_plan(plan_n, plan_c, plan_no_parity);
        if (*merge) return cmd_merge(merge_inputs, merge_out);
    } catch (const std::exception& e) {
        std::cerr << "forge: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}
