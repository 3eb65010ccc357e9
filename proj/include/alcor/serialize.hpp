#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "alcor/miner.hpp"
#include "alcor/rules.hpp"
#include "alcor/synth.hpp"

namespace alcor {

/// Writes `content` to `path` atomically (temp file + rename), so an
/// interrupted run never leaves a truncated file behind.
void atomic_write_file(const std::string& path, const std::string& content);

struct FrequentSetMeta {
    std::int64_t window_seconds = 0;
    std::uint64_t tuple_count = 0;
    std::uint64_t min_count = 0;
};

std::string frequent_set_to_json(const FrequentSet& set, const FrequentSetMeta& meta);
void write_frequent_set_file(const std::string& path, const FrequentSet& set,
                             const FrequentSetMeta& meta);

struct LoadedFrequentSet {
    FrequentSet set;
    FrequentSetMeta meta;
};

LoadedFrequentSet read_frequent_set(std::istream& in);
LoadedFrequentSet read_frequent_set_file(const std::string& path);

struct RuleReportMeta {
    std::int64_t window_seconds = 0;
    double min_confidence = 0.0;
    bool diagnostics = false; // adds the ratio-form confidence per rule
};

std::string rules_to_json(std::span<const CorrelationRule> rules, const RuleReportMeta& meta);
void write_rules_file(const std::string& path, std::span<const CorrelationRule> rules,
                      const RuleReportMeta& meta);

/// Human-readable rendering, one rule per line:
///   (a) --60s--> (b, c)  [conf=1.250000, supp=0.001200, W=60]
void write_rules_text(std::ostream& out, std::span<const CorrelationRule> rules,
                      const RuleReportMeta& meta);

std::string manifest_to_json(const WorkloadManifest& manifest);
void write_manifest_file(const std::string& path, const WorkloadManifest& manifest);

} // namespace alcor
