#include "alcor/runner.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <sstream>

namespace alcor {

namespace {

namespace fs = std::filesystem;

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void validate_scope(const ConfigModel& model, const ConstraintConfig& constraints) {
    if (constraints.scope && !model.contains(*constraints.scope))
        throw ConfigError("scope element " + to_string(*constraints.scope) +
                          " is not in the topology");
}

} // namespace

MineSummary run_mine(const MineOptions& options) {
    auto model = load_topology_file(options.topology_path);
    auto log = load_alarm_log_file(options.alarms_path, model);
    validate_scope(model, options.constraints);

    auto t0 = std::chrono::steady_clock::now();
    auto frequent = mine(log.queue, model, options.window, options.threshold,
                         options.constraints, options.workers);
    double mine_ms = elapsed_ms(t0);

    auto rules =
        generate_rules(frequent, log.queue, options.window, options.min_conf,
                       options.all_splits);

    MineSummary summary;
    summary.mine_ms = mine_ms;
    summary.tuple_count = log.queue.size();
    summary.min_count = options.threshold.effective_count(log.queue.size());
    for (const auto& [m, entries] : frequent.by_length()) {
        summary.sequences_per_level[m] = entries.size();
        summary.total_sequences += entries.size();
    }
    summary.rules = rules.size();

    FrequentSetMeta fmeta{options.window.width, summary.tuple_count, summary.min_count};
    RuleReportMeta rmeta{options.window.width, options.min_conf, options.diagnostics};
    summary.frequent_path = join_path(options.out_dir, "frequent.json");
    summary.rules_json_path = join_path(options.out_dir, "rules.json");
    summary.rules_text_path = join_path(options.out_dir, "rules.txt");
    write_frequent_set_file(summary.frequent_path, frequent, fmeta);
    write_rules_file(summary.rules_json_path, rules, rmeta);
    std::ostringstream text;
    write_rules_text(text, rules, rmeta);
    atomic_write_file(summary.rules_text_path, text.str());
    return summary;
}

QueueStats run_stats(const std::string& topology_path, const std::string& alarms_path) {
    auto model = load_topology_file(topology_path);
    auto log = load_alarm_log_file(alarms_path, model);
    return queue_stats(log.queue);
}

Workload build_workload(const GenerateOptions& options) {
    WorkloadSpec spec = options.spec;
    if (options.sample_intra > 0 || options.sample_inter > 0) {
        // pattern sampling must see the same pool the generator will build,
        // so replay the generator's draws with a scratch rng
        SplitMix64 rng(spec.seed ^ 0x5eedull);
        auto records = build_topology(spec.topology);
        SplitMix64 pool_rng(spec.seed);
        auto pool = sample_type_pool(records, spec.alphabet_size, pool_rng);
        spec.planted = sample_patterns(pool, options.sample_intra, options.sample_inter,
                                       options.pattern_length, options.injections,
                                       options.max_spread, rng);
    }
    return generate_workload(spec);
}

GenerateResult run_generate(const GenerateOptions& options) {
    auto workload = build_workload(options);

    GenerateResult result;
    result.manifest = workload.manifest;
    result.stats = queue_stats(workload.log.queue);
    result.topology_path = join_path(options.out_dir, "topology.txt");
    result.alarms_path = join_path(options.out_dir, "alarms.log");
    result.manifest_path = join_path(options.out_dir, "manifest.json");

    std::ostringstream topo;
    write_topology(topo, workload.topology_records);
    atomic_write_file(result.topology_path, topo.str());
    std::ostringstream log;
    write_alarm_log(log, workload.log);
    atomic_write_file(result.alarms_path, log.str());
    write_manifest_file(result.manifest_path, workload.manifest);
    return result;
}

namespace {

std::string bench_file_tag(std::uint64_t support, ConstraintMode mode) {
    return "s" + std::to_string(support) + "_" + to_string(mode);
}

void write_bench_tables(const std::string& out_dir, const std::vector<BenchRow>& rows) {
    std::size_t max_len = 0;
    for (const auto& r : rows)
        if (!r.per_length.empty())
            max_len = std::max(max_len, r.per_length.rbegin()->first);

    std::ostringstream exec, counts, avgs;
    exec << "min_support,setting,millis\n";
    counts << "min_support,setting,total";
    avgs << "min_support,setting";
    for (std::size_t m = 1; m <= max_len; ++m) {
        counts << ",len" << m;
        avgs << ",len" << m;
    }
    counts << '\n';
    avgs << '\n';

    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.3f", r.mine_ms);
        exec << r.min_support << ',' << to_string(r.setting) << ',' << buf << '\n';
        counts << r.min_support << ',' << to_string(r.setting) << ',' << r.total_sequences;
        avgs << r.min_support << ',' << to_string(r.setting);
        for (std::size_t m = 1; m <= max_len; ++m) {
            auto it = r.per_length.find(m);
            counts << ',' << (it == r.per_length.end() ? 0 : it->second);
            auto ia = r.avg_occurrences.find(m);
            avgs << ',';
            if (ia != r.avg_occurrences.end()) {
                std::snprintf(buf, sizeof buf, "%.6f", ia->second);
                avgs << buf;
            }
        }
        counts << '\n';
        avgs << '\n';
    }
    atomic_write_file(join_path(out_dir, "execution_time.csv"), exec.str());
    atomic_write_file(join_path(out_dir, "sequence_counts.csv"), counts.str());
    atomic_write_file(join_path(out_dir, "avg_occurrences.csv"), avgs.str());
}

} // namespace

std::vector<BenchRow> run_bench(const ConfigModel& model, const AlarmQueue& queue,
                                const BenchOptions& options) {
    if (options.supports.empty())
        throw ConfigError("bench needs at least one support value");
    static const ConstraintMode kSettings[] = {ConstraintMode::None, ConstraintMode::Inter,
                                               ConstraintMode::Intra};
    std::vector<BenchRow> rows;
    for (std::uint64_t support : options.supports) {
        for (ConstraintMode setting : kSettings) {
            ConstraintConfig constraints;
            constraints.mode = setting;
            constraints.application = options.application;

            auto threshold = SupportThreshold::count(support);
            auto t0 = std::chrono::steady_clock::now();
            auto frequent =
                mine(queue, model, options.window, threshold, constraints, options.workers);
            BenchRow row;
            row.mine_ms = elapsed_ms(t0);
            row.min_support = support;
            row.setting = setting;
            for (const auto& [m, entries] : frequent.by_length()) {
                row.per_length[m] = entries.size();
                row.total_sequences += entries.size();
                if (!entries.empty())
                    row.avg_occurrences[m] = average_occurrence_times(frequent, m);
            }

            if (!options.out_dir.empty()) {
                auto rules = generate_rules(frequent, queue, options.window, options.min_conf);
                FrequentSetMeta fmeta{options.window.width, queue.size(),
                                      threshold.effective_count(queue.size())};
                RuleReportMeta rmeta{options.window.width, options.min_conf, false};
                auto tag = bench_file_tag(support, setting);
                write_frequent_set_file(
                    join_path(options.out_dir, "frequent_" + tag + ".json"), frequent, fmeta);
                write_rules_file(join_path(options.out_dir, "rules_" + tag + ".json"), rules,
                                 rmeta);
            }
            rows.push_back(std::move(row));
        }
    }
    if (!options.out_dir.empty())
        write_bench_tables(options.out_dir, rows);
    return rows;
}

} // namespace alcor
