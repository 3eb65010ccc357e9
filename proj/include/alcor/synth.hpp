#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alcor/alarms.hpp"
#include "alcor/miner.hpp"
#include "alcor/topology.hpp"

namespace alcor {

/// Seedable, platform-independent pseudo-random generator (SplitMix64).
/// The fixed algorithm keeps generated workloads byte-identical across
/// platforms and toolchains.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform-ish draw in [0, n); n = 0 yields 0.
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

class SynthError : public Error {
public:
    using Error::Error;
};

class SpecInfeasible : public SynthError {
public:
    using SynthError::SynthError;
};

class InstanceTooLarge : public SynthError {
public:
    using SynthError::SynthError;
};

enum class PatternKind { Intra, Inter };

const char* to_string(PatternKind k);

/// A correlated episode to plant into the workload.
struct PlantedPattern {
    AlarmSequence sequence;       // length >= 2
    std::uint32_t injections = 1; // occurrences to plant
    std::int64_t max_spread = 1;  // max timestamp span of one occurrence
    PatternKind kind = PatternKind::Intra;
};

struct TopologyShape {
    unsigned mscs = 2;
    unsigned bscs_per_msc = 8;
    unsigned btss_per_bsc = 8;
    bool with_links = true;
};

struct WorkloadSpec {
    TopologyShape topology;
    std::uint32_t alphabet_size = 181; // distinct alarm types
    std::uint64_t total_events = 90000;
    std::vector<PlantedPattern> planted;
    double noise_rate = 0.2; // background events per second
    std::uint64_t seed = 1;
};

struct PatternManifest {
    AlarmSequence sequence;
    PatternKind kind = PatternKind::Intra;
    std::uint32_t injections = 0;
    std::uint64_t guaranteed_count = 0; // lower bound on occurrences in the log
    std::int64_t max_spread = 0;
    std::vector<std::vector<std::int64_t>> injection_timestamps;
};

struct WorkloadManifest {
    std::uint64_t seed = 0;
    std::int64_t horizon = 0;
    std::uint64_t events = 0;       // unique events emitted
    std::uint64_t noise_events = 0; // unique noise events emitted
    std::uint64_t alarm_types = 0;  // size of the alarm-type pool
    std::vector<PatternManifest> patterns;
};

struct Workload {
    std::vector<ConfigRecord> topology_records;
    AlarmLog log;
    WorkloadManifest manifest;
};

/// Builds the configuration records for a regular MSC/BSC/BTS tree (with
/// data-circuit elements when with_links is set).
std::vector<ConfigRecord> build_topology(const TopologyShape& shape);

/// Draws the alarm-type pool for a topology: alarm numbers 0..alphabet-1,
/// each bound to one uniformly drawn element, giving exactly `alphabet`
/// distinct types.
std::vector<AlarmType> sample_type_pool(const std::vector<ConfigRecord>& records,
                                        std::uint32_t alphabet, SplitMix64& rng);

/// Samples planted patterns from a type pool: n_intra single-class patterns
/// and n_inter mixed-class ones, with distinct types across patterns.
std::vector<PlantedPattern> sample_patterns(const std::vector<AlarmType>& pool,
                                            unsigned n_intra, unsigned n_inter,
                                            std::size_t length, std::uint32_t injections,
                                            std::int64_t max_spread, SplitMix64& rng);

/// Deterministically generates topology, alarm log and ground-truth
/// manifest. Each planted pattern appears at least `injections` times as
/// non-overlapping windowed occurrences; background noise draws types
/// uniformly over the pool.
Workload generate_workload(const WorkloadSpec& spec);

inline constexpr std::size_t kOracleMaxEvents = 500;

/// Exact occurrence count, computed independently of the mining engine:
/// a suffix recursion over events where every completion combination of an
/// occurrence is searched exhaustively. Used as ground truth. Refuses
/// queues above kOracleMaxEvents unless `override_guard` is set.
std::uint64_t oracle_count(const AlarmSequence& seq, const AlarmQueue& queue,
                           const WindowSpec& window, bool override_guard = false);

/// Reference miner: enumerates every sequence over the present alphabet up
/// to max_len, counts each with oracle_count, and thresholds. No candidate
/// pruning, no constraints. Guards: <= 300 events, <= 8 present types,
/// max_len <= 4.
FrequentSet oracle_mine(const AlarmQueue& queue, const WindowSpec& window,
                        const SupportThreshold& threshold, std::size_t max_len);

} // namespace alcor
