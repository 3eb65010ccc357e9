#pragma once

// Shared helpers for the test suites: a brute-force occurrence packer that is
// independent of both the miner and the synth oracle, plus random instance
// generators built on the repo's fixed rng.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "alcor/alarms.hpp"
#include "alcor/miner.hpp"
#include "alcor/synth.hpp"
#include "alcor/topology.hpp"

namespace testsupport {

using namespace alcor;

// A flat topology with a couple of MSCs/BSCs/BTSs for small fixtures.
inline ConfigModel small_model() {
    std::vector<ConfigRecord> records{
        make_record(10, 1, 0, 0),  make_record(10, 2, 0, 0),  make_record(20, 7, 10, 1),
        make_record(20, 8, 10, 2), make_record(30, 42, 20, 7), make_record(30, 43, 20, 7),
        make_record(30, 44, 20, 8), make_record(12, 7, 10, 1), make_record(23, 42, 20, 7),
    };
    return ConfigModel::load(records);
}

// Alarm types on a fixed element so sequences are easy to spell. `a(0)`,
// `a(1)`, ... are distinct types on BTS-42.
inline AlarmType bts_type(std::uint32_t num, std::uint32_t instance = 42) {
    return AlarmType{{ObjectClass::Bts, instance}, num};
}

inline AlarmType bsc_type(std::uint32_t num, std::uint32_t instance = 7) {
    return AlarmType{{ObjectClass::Bsc, instance}, num};
}

inline AlarmQueue queue_of(std::vector<AlarmEvent> events) {
    return AlarmQueue::from_events(std::move(events));
}

// Every valid occurrence of `seq`, as (start, end) spans.
struct OccSpan {
    std::int64_t start;
    std::int64_t end;
};

inline void enumerate_occurrences(const std::vector<AlarmEvent>& events,
                                  const AlarmSequence& seq, std::int64_t window,
                                  std::size_t pos, std::int64_t start, std::int64_t prev,
                                  std::size_t from, std::vector<OccSpan>& out) {
    if (pos == seq.size()) {
        out.push_back({start, prev});
        return;
    }
    for (std::size_t i = from; i < events.size(); ++i) {
        if (events[i].type != seq[pos])
            continue;
        if (pos == 0) {
            enumerate_occurrences(events, seq, window, 1, events[i].timestamp,
                                  events[i].timestamp, i + 1, out);
        } else {
            if (events[i].timestamp <= prev)
                continue;
            if (events[i].timestamp > start + window)
                break;
            enumerate_occurrences(events, seq, window, pos + 1, start, events[i].timestamp,
                                  i + 1, out);
        }
    }
}

inline int pack_nonoverlapping(const std::vector<OccSpan>& occs, std::size_t idx,
                               std::int64_t last_end) {
    int best = 0;
    for (std::size_t i = idx; i < occs.size(); ++i)
        if (occs[i].start > last_end)
            best = std::max(best, 1 + pack_nonoverlapping(occs, i + 1, occs[i].end));
    return best;
}

// Brute force: enumerate every occurrence, then search every non-overlapping
// subset. Only for small instances.
inline std::uint64_t brute_force_count(const AlarmSequence& seq, const AlarmQueue& queue,
                                       const WindowSpec& window) {
    std::vector<AlarmEvent> events;
    for (const auto& tuple : queue.tuples())
        for (const auto& type : tuple.types)
            events.push_back({type, tuple.timestamp});
    std::vector<OccSpan> occs;
    enumerate_occurrences(events, seq, window.width, 0, 0, 0, 0, occs);
    std::sort(occs.begin(), occs.end(),
              [](const OccSpan& a, const OccSpan& b) { return a.start < b.start; });
    return static_cast<std::uint64_t>(pack_nonoverlapping(occs, 0, -1));
}

// Random queue over `n_types` distinct BTS alarm types.
inline AlarmQueue random_queue(SplitMix64& rng, std::size_t max_events, std::size_t n_types,
                               std::int64_t max_span) {
    std::size_t n = 1 + rng.below(max_events);
    std::vector<AlarmEvent> events;
    events.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_span)));
        events.push_back({bts_type(static_cast<std::uint32_t>(rng.below(n_types))), t});
    }
    return queue_of(std::move(events));
}

inline AlarmSequence random_sequence(SplitMix64& rng, std::size_t max_len,
                                     std::size_t n_types) {
    std::size_t m = 1 + rng.below(max_len);
    AlarmSequence seq;
    for (std::size_t i = 0; i < m; ++i)
        seq.push_back(bts_type(static_cast<std::uint32_t>(rng.below(n_types))));
    return seq;
}

} // namespace testsupport
