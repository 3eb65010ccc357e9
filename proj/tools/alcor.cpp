#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "alcor/runner.hpp"

namespace {

using namespace alcor;

SupportThreshold parse_support(const std::string& raw) {
    // integer = occurrence count, decimal in (0,1) = fraction of the queue
    if (raw.find('.') == std::string::npos && raw.find('e') == std::string::npos &&
        raw.find('E') == std::string::npos) {
        try {
            return SupportThreshold::count(std::stoull(raw));
        } catch (const std::exception&) {
            throw ConfigError("bad --min-support value: " + raw);
        }
    }
    double f = 0.0;
    try {
        f = std::stod(raw);
    } catch (const std::exception&) {
        throw ConfigError("bad --min-support value: " + raw);
    }
    if (!(f > 0.0) || f >= 1.0)
        throw ConfigError("fractional --min-support must be in (0,1): " + raw);
    return SupportThreshold::fraction(f);
}

ElementId parse_scope(const std::string& raw) {
    auto colon = raw.find(':');
    if (colon == std::string::npos)
        throw ConfigError("--scope expects CLASS:INSTANCE, got: " + raw);
    try {
        int cls = std::stoi(raw.substr(0, colon));
        auto inst = static_cast<std::uint32_t>(std::stoul(raw.substr(colon + 1)));
        auto oc = object_class_from_code(cls);
        if (!oc)
            throw ConfigError("--scope names unknown class code " + std::to_string(cls));
        return ElementId{*oc, inst};
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("--scope expects CLASS:INSTANCE, got: " + raw);
    }
}

ConstraintMode parse_mode(const std::string& raw) {
    if (raw == "none")
        return ConstraintMode::None;
    if (raw == "inter")
        return ConstraintMode::Inter;
    if (raw == "intra")
        return ConstraintMode::Intra;
    throw ConfigError("--constraint must be none, inter or intra");
}

ConstraintApplication parse_apply(const std::string& raw) {
    if (raw == "generation")
        return ConstraintApplication::Generation;
    if (raw == "output")
        return ConstraintApplication::Output;
    throw ConfigError("--apply must be generation or output");
}

ScopeMode parse_scope_mode(const std::string& raw) {
    if (raw == "subtree")
        return ScopeMode::Subtree;
    if (raw == "class")
        return ScopeMode::ClassThreshold;
    throw ConfigError("--scope-mode must be subtree or class");
}

struct MineFlags {
    std::string topology, alarms, out = ".";
    std::int64_t window = 60;
    std::string min_support = "2";
    double min_conf = 0.0;
    std::string constraint = "none", scope, apply = "generation", scope_mode = "subtree";
    unsigned workers = 1;
    bool diagnostics = false, all_splits = false;
};

struct RulesFlags {
    std::string frequent, topology, alarms, out = ".";
    std::int64_t window = 0; // 0: take the window from the frequent-set file
    double min_conf = 0.0;
    bool diagnostics = false, all_splits = false;
};

struct StatsFlags {
    std::string topology, alarms;
};

struct GenFlags {
    std::string out = ".";
    std::uint64_t seed = 1, events = 90000;
    std::uint32_t types = 181;
    double noise_rate = 0.2;
    unsigned mscs = 2, bscs = 8, btss = 8, intra = 0, inter = 0;
    std::size_t pattern_length = 2;
    std::uint32_t injections = 60;
    std::int64_t max_spread = 30;
};

struct BenchFlags {
    std::string topology, alarms, out = "bench";
    std::string supports = "10,20,40,80";
    std::int64_t window = 60;
    std::string apply = "generation";
    double min_conf = 0.5;
    unsigned workers = 1;
    // workload generation, used when no input files are given
    GenFlags gen;
};

int run_mine_cmd(const MineFlags& f) {
    MineOptions opt;
    opt.topology_path = f.topology;
    opt.alarms_path = f.alarms;
    opt.out_dir = f.out;
    opt.window = WindowSpec(f.window);
    opt.threshold = parse_support(f.min_support);
    opt.min_conf = f.min_conf;
    opt.constraints.mode = parse_mode(f.constraint);
    if (!f.scope.empty())
        opt.constraints.scope = parse_scope(f.scope);
    opt.constraints.application = parse_apply(f.apply);
    opt.constraints.scope_mode = parse_scope_mode(f.scope_mode);
    opt.workers = f.workers;
    opt.diagnostics = f.diagnostics;
    opt.all_splits = f.all_splits;

    auto s = run_mine(opt);
    std::printf("tuples: %llu   min count: %llu   mining time: %.1f ms\n",
                static_cast<unsigned long long>(s.tuple_count),
                static_cast<unsigned long long>(s.min_count), s.mine_ms);
    std::printf("frequent sequences: %zu", s.total_sequences);
    if (!s.sequences_per_level.empty()) {
        std::printf(" (");
        bool first = true;
        for (const auto& [m, n] : s.sequences_per_level) {
            std::printf("%slen %zu: %zu", first ? "" : ", ", m, n);
            first = false;
        }
        std::printf(")");
    }
    std::printf("\nrules emitted: %zu\n", s.rules);
    std::printf("wrote %s\nwrote %s\nwrote %s\n", s.frequent_path.c_str(),
                s.rules_json_path.c_str(), s.rules_text_path.c_str());
    return 0;
}

int run_rules_cmd(const RulesFlags& f) {
    auto loaded = read_frequent_set_file(f.frequent);
    auto model = load_topology_file(f.topology);
    auto log = load_alarm_log_file(f.alarms, model);
    WindowSpec window(f.window > 0 ? f.window : loaded.meta.window_seconds);
    auto rules = generate_rules(loaded.set, log.queue, window, f.min_conf, f.all_splits);
    RuleReportMeta meta{window.width, f.min_conf, f.diagnostics};
    auto json_path = (std::filesystem::path(f.out) / "rules.json").string();
    auto text_path = (std::filesystem::path(f.out) / "rules.txt").string();
    write_rules_file(json_path, rules, meta);
    std::ostringstream text;
    write_rules_text(text, rules, meta);
    atomic_write_file(text_path, text.str());
    std::printf("rules emitted: %zu\nwrote %s\nwrote %s\n", rules.size(), json_path.c_str(),
                text_path.c_str());
    return 0;
}

int run_stats_cmd(const StatsFlags& f) {
    auto s = run_stats(f.topology, f.alarms);
    std::printf("events: %llu\ntuples: %llu\ndistinct alarm types: %llu\nspan: %lld s\n",
                static_cast<unsigned long long>(s.events),
                static_cast<unsigned long long>(s.tuples),
                static_cast<unsigned long long>(s.distinct_types),
                static_cast<long long>(s.span));
    return 0;
}

GenerateOptions generate_options_from(const GenFlags& f);

int run_generate_cmd(const GenFlags& f) {
    auto r = run_generate(generate_options_from(f));
    std::printf("events: %llu (noise %llu)   alarm types: %llu   horizon: %lld s\n",
                static_cast<unsigned long long>(r.manifest.events),
                static_cast<unsigned long long>(r.manifest.noise_events),
                static_cast<unsigned long long>(r.manifest.alarm_types),
                static_cast<long long>(r.manifest.horizon));
    std::printf("wrote %s\nwrote %s\nwrote %s\n", r.topology_path.c_str(),
                r.alarms_path.c_str(), r.manifest_path.c_str());
    return 0;
}

GenerateOptions generate_options_from(const GenFlags& f) {
    GenerateOptions opt;
    opt.spec.seed = f.seed;
    opt.spec.total_events = f.events;
    opt.spec.alphabet_size = f.types;
    opt.spec.noise_rate = f.noise_rate;
    opt.spec.topology = TopologyShape{f.mscs, f.bscs, f.btss, true};
    opt.sample_intra = f.intra;
    opt.sample_inter = f.inter;
    opt.pattern_length = f.pattern_length;
    opt.injections = f.injections;
    opt.max_spread = f.max_spread;
    opt.out_dir = f.out;
    return opt;
}

int run_bench_cmd(const BenchFlags& f) {
    BenchOptions opt;
    std::stringstream ss(f.supports);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) {
            try {
                opt.supports.push_back(std::stoull(item));
            } catch (const std::exception&) {
                throw ConfigError("bad --supports entry: " + item);
            }
        }
    opt.window = WindowSpec(f.window);
    opt.application = parse_apply(f.apply);
    opt.min_conf = f.min_conf;
    opt.workers = f.workers;
    opt.out_dir = f.out;

    if (f.topology.empty() != f.alarms.empty())
        throw ConfigError("--topology and --alarms must be given together");

    ConfigModel model = ConfigModel::load({});
    AlarmQueue queue;
    if (!f.topology.empty()) {
        model = load_topology_file(f.topology);
        queue = load_alarm_log_file(f.alarms, model).queue;
    } else {
        // no input files: generate the workload from the seed and profile
        // flags, and keep a copy next to the tables for reproducibility
        auto gen_opt = generate_options_from(f.gen);
        gen_opt.out_dir = f.out;
        auto gen = run_generate(gen_opt);
        model = load_topology_file(gen.topology_path);
        queue = load_alarm_log_file(gen.alarms_path, model).queue;
    }
    auto rows = run_bench(model, queue, opt);
    std::printf("min_support  setting  millis      sequences\n");
    for (const auto& r : rows)
        std::printf("%-12llu %-8s %-11.3f %zu\n",
                    static_cast<unsigned long long>(r.min_support), to_string(r.setting),
                    r.mine_ms, r.total_sequences);
    std::printf("tables written to %s\n", f.out.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"alcor - correlated-alarm sequence mining for GSM alarm logs"};
    app.require_subcommand(1);

    MineFlags mine_f;
    auto* mine_cmd =
        app.add_subcommand("mine", "Mine correlated alarm sequences and rules from a log");
    mine_cmd->add_option("--topology", mine_f.topology, "Topology file")->required();
    mine_cmd->add_option("--alarms", mine_f.alarms, "Alarm log file")->required();
    mine_cmd->add_option("--window", mine_f.window, "Viewing window in seconds");
    mine_cmd->add_option("--min-support", mine_f.min_support,
                         "Occurrence count (integer) or fraction in (0,1)");
    mine_cmd->add_option("--min-conf", mine_f.min_conf, "Minimum rule confidence");
    mine_cmd->add_option("--out", mine_f.out, "Output directory");
    mine_cmd->add_option("--workers", mine_f.workers, "Worker threads for counting");
    mine_cmd->add_option("--constraint", mine_f.constraint,
                         "Constraint mode: none|inter|intra");
    mine_cmd->add_option("--scope", mine_f.scope, "Scope element as CLASS:INSTANCE");
    mine_cmd->add_option("--apply", mine_f.apply,
                         "Constraint application point: generation|output");
    mine_cmd->add_option("--scope-mode", mine_f.scope_mode, "Scope semantics: subtree|class");
    mine_cmd->add_flag("--diagnostics", mine_f.diagnostics,
                       "Add the ratio-form confidence to the rule report");
    mine_cmd->add_flag("--all-splits", mine_f.all_splits,
                       "Split rules over all subsequences, not just prefixes");

    RulesFlags rules_f;
    auto* rules_cmd = app.add_subcommand("rules", "Regenerate rules from a frequent-set file");
    rules_cmd->add_option("--frequent", rules_f.frequent, "Frequent-set JSON file")->required();
    rules_cmd->add_option("--topology", rules_f.topology, "Topology file")->required();
    rules_cmd->add_option("--alarms", rules_f.alarms, "Alarm log file")->required();
    rules_cmd->add_option("--window", rules_f.window,
                          "Viewing window in seconds (default: from the frequent-set file)");
    rules_cmd->add_option("--min-conf", rules_f.min_conf, "Minimum rule confidence");
    rules_cmd->add_option("--out", rules_f.out, "Output directory");
    rules_cmd->add_flag("--diagnostics", rules_f.diagnostics,
                        "Add the ratio-form confidence to the rule report");
    rules_cmd->add_flag("--all-splits", rules_f.all_splits,
                        "Split rules over all subsequences, not just prefixes");

    StatsFlags stats_f;
    auto* stats_cmd = app.add_subcommand("stats", "Print alarm log statistics");
    stats_cmd->add_option("--topology", stats_f.topology, "Topology file")->required();
    stats_cmd->add_option("--alarms", stats_f.alarms, "Alarm log file")->required();

    GenFlags gen_f;
    auto* gen_cmd =
        app.add_subcommand("generate", "Generate a synthetic workload with planted patterns");
    gen_cmd->add_option("--out", gen_f.out, "Output directory");
    gen_cmd->add_option("--seed", gen_f.seed, "Generator seed");
    gen_cmd->add_option("--events", gen_f.events, "Total events");
    gen_cmd->add_option("--types", gen_f.types, "Distinct alarm types");
    gen_cmd->add_option("--noise-rate", gen_f.noise_rate, "Background events per second");
    gen_cmd->add_option("--mscs", gen_f.mscs, "MSC count");
    gen_cmd->add_option("--bscs-per-msc", gen_f.bscs, "BSCs per MSC");
    gen_cmd->add_option("--btss-per-bsc", gen_f.btss, "BTSs per BSC");
    gen_cmd->add_option("--intra", gen_f.intra, "Planted same-class patterns");
    gen_cmd->add_option("--inter", gen_f.inter, "Planted mixed-class patterns");
    gen_cmd->add_option("--pattern-length", gen_f.pattern_length, "Planted pattern length");
    gen_cmd->add_option("--injections", gen_f.injections, "Occurrences per pattern");
    gen_cmd->add_option("--max-spread", gen_f.max_spread,
                        "Max timestamp span of one planted occurrence");

    BenchFlags bench_f;
    auto* bench_cmd = app.add_subcommand(
        "bench", "Sweep minimum supports over Nocons/Inter/Intra and emit report tables");
    bench_cmd->add_option("--topology", bench_f.topology,
                          "Topology file (omit to generate a workload)");
    bench_cmd->add_option("--alarms", bench_f.alarms,
                          "Alarm log file (omit to generate a workload)");
    bench_cmd->add_option("--supports", bench_f.supports,
                          "Comma-separated occurrence-count thresholds");
    bench_cmd->add_option("--window", bench_f.window, "Viewing window in seconds");
    bench_cmd->add_option("--apply", bench_f.apply,
                          "Constraint application point: generation|output");
    bench_cmd->add_option("--min-conf", bench_f.min_conf, "Minimum rule confidence");
    bench_cmd->add_option("--out", bench_f.out, "Output directory");
    bench_cmd->add_option("--workers", bench_f.workers, "Worker threads for counting");
    bench_cmd->add_option("--seed", bench_f.gen.seed, "Generator seed (generated workloads)");
    bench_cmd->add_option("--events", bench_f.gen.events, "Total events");
    bench_cmd->add_option("--types", bench_f.gen.types, "Distinct alarm types");
    bench_cmd->add_option("--noise-rate", bench_f.gen.noise_rate,
                          "Background events per second");
    bench_cmd->add_option("--mscs", bench_f.gen.mscs, "MSC count");
    bench_cmd->add_option("--bscs-per-msc", bench_f.gen.bscs, "BSCs per MSC");
    bench_cmd->add_option("--btss-per-bsc", bench_f.gen.btss, "BTSs per BSC");
    bench_cmd->add_option("--intra", bench_f.gen.intra, "Planted same-class patterns");
    bench_cmd->add_option("--inter", bench_f.gen.inter, "Planted mixed-class patterns");
    bench_cmd->add_option("--pattern-length", bench_f.gen.pattern_length,
                          "Planted pattern length");
    bench_cmd->add_option("--injections", bench_f.gen.injections, "Occurrences per pattern");
    bench_cmd->add_option("--max-spread", bench_f.gen.max_spread,
                          "Max timestamp span of one planted occurrence");

    try {
        app.parse(argc, argv);
        if (mine_cmd->parsed())
            return run_mine_cmd(mine_f);
        if (rules_cmd->parsed())
            return run_rules_cmd(rules_f);
        if (stats_cmd->parsed())
            return run_stats_cmd(stats_f);
        if (gen_cmd->parsed())
            return run_generate_cmd(gen_f);
        if (bench_cmd->parsed())
            return run_bench_cmd(bench_f);
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help and friends
        std::fprintf(stderr, "alcor: %s\n", e.what());
        return 3;
    } catch (const IoError& e) {
        std::fprintf(stderr, "alcor: %s\n", e.what());
        return 1;
    } catch (const AlarmParseError& e) {
        std::fprintf(stderr, "alcor: %s\n", e.what());
        return 2;
    } catch (const TopologyError& e) {
        std::fprintf(stderr, "alcor: %s\n", e.what());
        return 2;
    } catch (const Error& e) { // config, miner, rules, synth
        std::fprintf(stderr, "alcor: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "alcor: %s\n", e.what());
        return 3;
    }
}
