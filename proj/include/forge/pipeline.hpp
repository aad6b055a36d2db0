#ifndef FORGE_PIPELINE_HPP
#define FORGE_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "forge/drawing.hpp"
#include "forge/equivalence.hpp"
#include "forge/extension.hpp"
#include "forge/k12check.hpp"

namespace forge {

/// Input i belongs to shard (i mod count).
struct ShardSpec {
    int index = 0;
    int count = 1;

    bool owns(std::size_t input) const { return static_cast<int>(input % static_cast<std::size_t>(count)) == index; }
    std::string text() const;
    /// Parses "i/k" with 0 <= i < k.
    static ShardSpec parse(const std::string& s);
};

enum class Mode { Alg1, Alg2 };

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

struct StageConfig {
    std::int64_t max_crossings = 0;
    Mode mode = Mode::Alg1;
    ShardSpec shard;
    ExtendOptions extend;
    int threads = 0;       // 0: OpenMP default
    int batch_size = 64;   // inputs per checkpoint block
    std::filesystem::path checkpoint;  // empty: no checkpointing
};

using Histogram = std::map<std::int64_t, std::size_t>;  // crossings -> drawings

struct StageStats {
    int n = 0;  // vertices of the produced drawings
    std::int64_t max_crossings = 0;
    Mode mode = Mode::Alg1;
    ShardSpec shard;
    std::size_t inputs = 0;     // records in the input file
    std::size_t processed = 0;  // inputs owned by the shard
    std::size_t resumed = 0;    // of those, restored from a checkpoint
    std::size_t invalid = 0;
    std::size_t outputs = 0;
    std::size_t error_records = 0;
    std::size_t fallbacks = 0;
    Histogram histogram;
    double cpu_seconds = 0;
    double wall_seconds = 0;

    void write(std::ostream& out) const;
    static StageStats read(std::istream& in);
};

struct StageOutput {
    std::vector<Drawing> drawings;  // canonical forms, sorted by (crossings, canonical code)
    ErrorSet errors;
    StageStats stats;
};

/**
 * One extension stage over in-memory inputs, one work unit per input
 * drawing. The serial version is the reference; both produce identical
 * output for any thread count.
 */
StageOutput generate_stage(std::span<const Drawing> inputs, const StageConfig& cfg);
StageOutput generate_stage_serial(std::span<const Drawing> inputs, const StageConfig& cfg);

/// Sorted union of deduplicated drawing sets.
std::vector<Drawing> merge_outputs(std::span<const std::vector<Drawing>> parts);

struct StageRun {
    std::filesystem::path input;
    std::filesystem::path output;
    StageStats stats;
    std::vector<std::string> input_errors;  // one per skipped record
};

/**
 * Reads and validates the input file, runs the shard, writes the output
 * file plus `<out>.stats` and, in alg2 mode, `<out>.errors`. A checkpoint at
 * `<out>.ckpt` is resumed if present and removed on completion.
 */
StageRun run_stage(const std::filesystem::path& input, const std::filesystem::path& output, const StageConfig& cfg);

/// Rows (set name, count, CPU time) per stage and crossing count.
std::string stats_table(std::span<const StageStats> runs);

struct RecordReport {
    int index = 0;
    int first_line = 0;
    int n = 0;
    std::int64_t crossings = -1;
    std::vector<std::string> problems;
};

struct VerifyReport {
    std::vector<RecordReport> records;
    bool parity_checked = false;
    std::vector<std::string> file_problems;  // e.g. mixed parity

    bool ok() const;
    std::size_t bad_records() const;
};

/// Structural validation, recomputed crossings, counting identity and parity.
VerifyReport verify_drawings(std::istream& in);
VerifyReport verify_file(const std::filesystem::path& path);
void write_report(std::ostream& out, const VerifyReport& r);

struct CompoundConfig {
    std::int64_t mid_crossings = 100;  // budget of the middle stage
    K12Params last;
    RepresentativeOptions reps;
    int threads = 0;
};

struct CompoundResult {
    std::size_t bases = 0;
    std::size_t mids = 0;          // middle drawings examined
    std::size_t mids_discarded = 0;  // dropped by the minimality filter
    std::size_t verdicts = 0;      // non-skip face verdicts
    std::size_t hits = 0;
    std::size_t anomalies = 0;
    std::size_t identity_failures = 0;
    std::size_t fallbacks = 0;
    std::vector<std::string> verdict_lines;  // ordered by input, then generation order
    ErrorSet errors;
    double cpu_seconds = 0;

    bool clean() const { return hits == 0 && anomalies == 0 && identity_failures == 0 && errors.empty(); }
};

/**
 * The final two stages without storing middle drawings: representatives of
 * every base, minimality-filtered, each checked against every base face.
 */
CompoundResult run_compound(std::span<const Drawing> bases, const CompoundConfig& cfg);

}  // namespace forge

#endif
