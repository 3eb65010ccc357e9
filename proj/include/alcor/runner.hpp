#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "alcor/miner.hpp"
#include "alcor/rules.hpp"
#include "alcor/serialize.hpp"
#include "alcor/synth.hpp"

namespace alcor {

/// Invalid run configuration (flag combinations, unknown scope, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

struct MineOptions {
    std::string topology_path;
    std::string alarms_path;
    std::string out_dir = ".";
    WindowSpec window{60};
    SupportThreshold threshold = SupportThreshold::count(2);
    double min_conf = 0.0;
    ConstraintConfig constraints;
    unsigned workers = 1;
    bool diagnostics = false;
    bool all_splits = false;
};

struct MineSummary {
    std::map<std::size_t, std::size_t> sequences_per_level;
    std::size_t total_sequences = 0;
    std::size_t rules = 0;
    double mine_ms = 0.0; // the mining loop only
    std::uint64_t tuple_count = 0;
    std::uint64_t min_count = 0;
    std::string frequent_path;
    std::string rules_json_path;
    std::string rules_text_path;
};

/// Mines an alarm log end to end and writes the frequent-set file plus the
/// rule report (JSON and text) into the output directory.
MineSummary run_mine(const MineOptions& options);

QueueStats run_stats(const std::string& topology_path, const std::string& alarms_path);

struct GenerateOptions {
    WorkloadSpec spec;
    // when set, planted patterns are sampled from the type pool instead of
    // taken from spec.planted
    unsigned sample_intra = 0;
    unsigned sample_inter = 0;
    std::size_t pattern_length = 2;
    std::uint32_t injections = 60;
    std::int64_t max_spread = 30;
    std::string out_dir = ".";
};

struct GenerateResult {
    std::string topology_path;
    std::string alarms_path;
    std::string manifest_path;
    WorkloadManifest manifest;
    QueueStats stats;
};

/// Samples planted patterns (when requested) and generates the workload,
/// without touching the filesystem.
Workload build_workload(const GenerateOptions& options);

GenerateResult run_generate(const GenerateOptions& options);

struct BenchOptions {
    std::vector<std::uint64_t> supports; // raw occurrence-count thresholds
    WindowSpec window{60};
    ConstraintApplication application = ConstraintApplication::Generation;
    double min_conf = 0.5;
    unsigned workers = 1;
    std::string out_dir; // empty: tables and per-run files are not written
};

struct BenchRow {
    std::uint64_t min_support = 0;
    ConstraintMode setting = ConstraintMode::None;
    double mine_ms = 0.0;
    std::size_t total_sequences = 0;
    std::map<std::size_t, std::size_t> per_length;
    std::map<std::size_t, double> avg_occurrences;
};

/// Runs mine() for every (support, setting) combination over the settings
/// {Nocons, Inter, Intra}, writes the three report tables plus per-run
/// frequent-set and rule files, and returns the rows.
std::vector<BenchRow> run_bench(const ConfigModel& model, const AlarmQueue& queue,
                                const BenchOptions& options);

} // namespace alcor
