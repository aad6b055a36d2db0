#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "forge/canonical.hpp"
#include "forge/drawing_io.hpp"
#include "forge/pipeline.hpp"
#include "support.hpp"

using namespace forge;
namespace fs = std::filesystem;

#ifndef FORGE_TEST_DATA
#error "FORGE_TEST_DATA must point at tests/data"
#endif

namespace {

std::string text_of(const std::vector<Drawing>& ds) {
    std::ostringstream out;
    for (const auto& d : ds) write_drawing(out, d);
    return out.str();
}

StageConfig config(std::int64_t c, Mode mode = Mode::Alg1) {
    StageConfig cfg;
    cfg.max_crossings = c;
    cfg.mode = mode;
    return cfg;
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("forge-test-" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("shard spec") {
    CHECK(ShardSpec::parse("2/5").index == 2);
    CHECK(ShardSpec::parse("2/5").count == 5);
    CHECK(ShardSpec::parse("0/1").text() == "0/1");
    CHECK_THROWS(ShardSpec::parse("5/5"));
    CHECK_THROWS(ShardSpec::parse("x"));
    CHECK(parse_mode("alg2") == Mode::Alg2);
    CHECK_THROWS(parse_mode("alg3"));
}

TEST_CASE("parallel stage equals the serial reference for any thread count") {
    const auto& k7 = fixture::chain(7);
    const StageOutput ref = generate_stage_serial(k7, config(20));
    CHECK(ref.stats.histogram == Histogram{{18, 3}, {19, 18}, {20, 88}});
    for (int threads : {1, 2, 4}) {
        StageConfig cfg = config(20);
        cfg.threads = threads;
        cfg.batch_size = 3;
        CHECK(text_of(generate_stage(k7, cfg).drawings) == text_of(ref.drawings));
    }
}

TEST_CASE("sharded outputs merge to the unsharded output") {
    const auto& k7 = fixture::chain(7);
    const StageOutput whole = generate_stage(k7, config(20));
    std::vector<std::vector<Drawing>> parts;
    for (int i = 0; i < 4; ++i) {
        StageConfig cfg = config(20);
        cfg.shard = {i, 4};
        parts.push_back(generate_stage(k7, cfg).drawings);
    }
    CHECK(text_of(merge_outputs(parts)) == text_of(whole.drawings));
}

TEST_CASE("alg2 keeps only minimal drawings and matches alg1 at the minimum") {
    const auto& k7 = fixture::chain(7);
    const StageOutput a1 = generate_stage(k7, config(20));
    const StageOutput a2 = generate_stage(k7, config(20, Mode::Alg2));
    CHECK(a2.errors.empty());
    CHECK(a2.stats.fallbacks == 0);
    CHECK(a2.drawings.size() <= a1.drawings.size());
    DedupStore all;
    for (const auto& d : a1.drawings) all.insert_if_new(canonical_code(d));
    for (const auto& d : a2.drawings) CHECK(all.contains(canonical_code(d)));
    // every optimal drawing contains only optimal subdrawings, so none is filtered
    CHECK(a2.stats.histogram.at(18) == 3);
}

TEST_CASE("checkpoints resume to the same output") {
    TempDir tmp;
    const auto& k6 = fixture::chain(6);
    StageConfig cfg = config(9);
    cfg.batch_size = 1;
    cfg.checkpoint = tmp.path / "stage.ckpt";
    const StageOutput first = generate_stage(k6, cfg);
    // keep the header, the first complete block and half of the next one
    const std::string full = slurp(cfg.checkpoint);
    const auto first_done = full.find("# done ");
    const auto cut = full.find('\n', first_done) + 1;
    {
        std::ofstream out(cfg.checkpoint, std::ios::trunc);
        out << full.substr(0, cut) << full.substr(cut, (full.size() - cut) / 2);
    }
    const StageOutput resumed = generate_stage(k6, cfg);
    CHECK(resumed.stats.resumed == 1);
    CHECK(text_of(resumed.drawings) == text_of(first.drawings));

    StageConfig other = cfg;
    other.max_crossings = 8;
    CHECK_THROWS(generate_stage(k6, other));
}

TEST_CASE("run_stage writes output, stats and no leftover checkpoint") {
    TempDir tmp;
    const fs::path in = tmp.path / "k6.txt", out = tmp.path / "k7.txt";
    write_drawings_file(in.string(), fixture::chain(6));
    // a broken record is skipped and reported
    {
        std::ofstream app(in, std::ios::app);
        app << "D n=6 x=0\nV 1: 0\n.\n";
    }
    const StageRun run = run_stage(in, out, config(9, Mode::Alg2));
    CHECK(run.input_errors.size() == 1);
    CHECK(fs::exists(out));
    CHECK(fs::exists(out.string() + ".stats"));
    CHECK(fs::exists(out.string() + ".errors"));
    CHECK_FALSE(fs::exists(out.string() + ".ckpt"));
    const auto written = read_drawings_file(out.string());
    CHECK(written.size() == run.stats.outputs);
    CHECK(text_of(written) == text_of(fixture::chain_at(7, 9)));

    std::ifstream st(out.string() + ".stats");
    const StageStats back = StageStats::read(st);
    CHECK(back.n == 7);
    CHECK(back.histogram == run.stats.histogram);
    CHECK(back.mode == Mode::Alg2);
}

TEST_CASE("stats table") {
    const std::vector<StageStats> none;
    const std::string empty = stats_table(none);
    CHECK(empty.find("# drawings") != std::string::npos);
    CHECK(std::count(empty.begin(), empty.end(), '\n') == 1);

    const StageOutput k8 = generate_stage(fixture::chain(7), config(20));
    const std::vector<StageStats> one{k8.stats};
    const std::string table = stats_table(one);
    CHECK(table.find("D_8^18") != std::string::npos);
    std::istringstream rows(table);
    std::string line, name;
    std::size_t count = 0, total = 0;
    std::getline(rows, line);
    while (rows >> name >> count) {
        total += count;
        std::getline(rows, line);
    }
    CHECK(total == k8.drawings.size());
}

TEST_CASE("verify accepts the golden file and flags broken ones") {
    const VerifyReport golden = verify_file(fs::path(FORGE_TEST_DATA) / "k8_18.txt");
    CHECK(golden.ok());
    CHECK(golden.records.size() == 3);

    std::string text = to_text(fixture::optimal_k5());
    const auto pos = text.find("twin=");
    text.replace(pos, 6, "twin=9");
    std::istringstream bad(text);
    CHECK_FALSE(verify_drawings(bad).ok());

    // K7 drawings with 9 and 10 crossings cannot both be good
    const Drawing& k7 = fixture::chain(7).front();
    std::string mixed = to_text(k7) + to_text(k7);
    const auto second = mixed.find("D n=7 x=9", 1);
    mixed.replace(second, 9, "D n=7 x=10");
    std::istringstream mixed_in(mixed);
    const VerifyReport r = verify_drawings(mixed_in);
    CHECK_FALSE(r.ok());
}
