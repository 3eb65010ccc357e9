#include "alcor/synth.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace alcor {

const char* to_string(PatternKind k) {
    return k == PatternKind::Intra ? "intra" : "inter";
}

std::vector<ConfigRecord> build_topology(const TopologyShape& shape) {
    std::vector<ConfigRecord> records;
    std::uint32_t bsc_serial = 0, bts_serial = 0;
    for (std::uint32_t m = 1; m <= shape.mscs; ++m) {
        records.push_back(make_record(10, m, 0, 0));
        for (unsigned b = 0; b < shape.bscs_per_msc; ++b) {
            std::uint32_t bsc = ++bsc_serial;
            records.push_back(make_record(20, bsc, 10, m));
            if (shape.with_links)
                records.push_back(make_record(12, bsc, 10, m)); // circuit to this BSC
            for (unsigned t = 0; t < shape.btss_per_bsc; ++t) {
                std::uint32_t bts = ++bts_serial;
                records.push_back(make_record(30, bts, 20, bsc));
                if (shape.with_links)
                    records.push_back(make_record(23, bts, 20, bsc));
            }
        }
    }
    return records;
}

std::vector<AlarmType> sample_type_pool(const std::vector<ConfigRecord>& records,
                                        std::uint32_t alphabet, SplitMix64& rng) {
    if (records.empty())
        throw SpecInfeasible("type pool needs a non-empty topology");
    std::vector<AlarmType> pool;
    pool.reserve(alphabet);
    for (std::uint32_t num = 0; num < alphabet; ++num) {
        const auto& rec = records[rng.below(records.size())];
        pool.push_back(AlarmType{rec.element, num});
    }
    return pool;
}

std::vector<PlantedPattern> sample_patterns(const std::vector<AlarmType>& pool,
                                            unsigned n_intra, unsigned n_inter,
                                            std::size_t length, std::uint32_t injections,
                                            std::int64_t max_spread, SplitMix64& rng) {
    if (length < 2)
        throw SpecInfeasible("planted patterns must have length >= 2");
    std::map<ObjectClass, std::vector<AlarmType>> by_class;
    for (const auto& t : pool)
        by_class[t.element.object_class].push_back(t);

    std::set<AlarmType> used;
    auto free_in = [&](ObjectClass cls) {
        std::vector<AlarmType> out;
        for (const auto& t : by_class[cls])
            if (!used.contains(t))
                out.push_back(t);
        return out;
    };
    auto take = [&](const std::vector<AlarmType>& from) {
        auto t = from[rng.below(from.size())];
        used.insert(t);
        return t;
    };

    std::vector<PlantedPattern> patterns;
    for (unsigned i = 0; i < n_intra; ++i) {
        // a class with enough unused types for a single-class pattern
        std::vector<ObjectClass> candidates;
        for (auto& [cls, types] : by_class)
            if (free_in(cls).size() >= length)
                candidates.push_back(cls);
        if (candidates.empty())
            throw SpecInfeasible("type pool too small for the requested intra patterns");
        auto cls = candidates[rng.below(candidates.size())];
        PlantedPattern p;
        p.kind = PatternKind::Intra;
        p.injections = injections;
        p.max_spread = max_spread;
        for (std::size_t j = 0; j < length; ++j)
            p.sequence.push_back(take(free_in(cls)));
        patterns.push_back(std::move(p));
    }
    for (unsigned i = 0; i < n_inter; ++i) {
        std::vector<ObjectClass> candidates;
        for (auto& [cls, types] : by_class)
            if (!free_in(cls).empty())
                candidates.push_back(cls);
        if (candidates.size() < 2)
            throw SpecInfeasible("type pool too small for the requested inter patterns");
        PlantedPattern p;
        p.kind = PatternKind::Inter;
        p.injections = injections;
        p.max_spread = max_spread;
        // two distinct classes up front, the rest from any free type
        ObjectClass c1 = candidates[rng.below(candidates.size())];
        ObjectClass c2 = c1;
        while (c2 == c1)
            c2 = candidates[rng.below(candidates.size())];
        p.sequence.push_back(take(free_in(c1)));
        p.sequence.push_back(take(free_in(c2)));
        while (p.sequence.size() < length) {
            std::vector<AlarmType> any_free;
            for (const auto& t : pool)
                if (!used.contains(t))
                    any_free.push_back(t);
            if (any_free.empty())
                throw SpecInfeasible("type pool too small for the requested inter patterns");
            p.sequence.push_back(take(any_free));
        }
        patterns.push_back(std::move(p));
    }
    return patterns;
}

namespace {

void validate_pattern(const PlantedPattern& p) {
    if (p.sequence.size() < 2)
        throw SpecInfeasible("planted pattern shorter than 2");
    if (p.injections == 0)
        throw SpecInfeasible("planted pattern with zero injections");
    if (p.max_spread < static_cast<std::int64_t>(p.sequence.size()) - 1)
        throw SpecInfeasible("max_spread leaves no room for strictly increasing timestamps");
    bool intra = satisfies_intra(p.sequence);
    if ((p.kind == PatternKind::Intra) != intra)
        throw SpecInfeasible("pattern kind does not match its class composition");
}

} // namespace

Workload generate_workload(const WorkloadSpec& spec) {
    for (const auto& p : spec.planted)
        validate_pattern(p);

    SplitMix64 rng(spec.seed);
    Workload w;
    w.topology_records = build_topology(spec.topology);
    auto pool = sample_type_pool(w.topology_records, spec.alphabet_size, rng);

    std::uint64_t planted_events = 0;
    for (const auto& p : spec.planted)
        planted_events += static_cast<std::uint64_t>(p.sequence.size()) * p.injections;
    if (spec.total_events < planted_events)
        throw SpecInfeasible("total_events is smaller than the planted events");
    const std::uint64_t noise_target = spec.total_events - planted_events;

    // the horizon is pinned by the noise rate; without noise it is sized to
    // just fit the injections
    std::int64_t required = 1;
    for (const auto& p : spec.planted)
        required = std::max<std::int64_t>(
            required, static_cast<std::int64_t>(p.injections) * (p.max_spread + 2));
    std::int64_t horizon;
    if (noise_target > 0 && spec.noise_rate > 0.0)
        horizon = static_cast<std::int64_t>(
            std::max(1.0, static_cast<double>(noise_target) / spec.noise_rate));
    else
        horizon = required;
    if (horizon < required)
        throw SpecInfeasible("injections cannot fit the time horizon");

    std::vector<AlarmEvent> events;
    std::set<std::pair<AlarmType, std::int64_t>> taken;
    w.manifest.seed = spec.seed;
    w.manifest.horizon = horizon;
    w.manifest.alarm_types = pool.size();

    for (const auto& p : spec.planted) {
        PatternManifest pm;
        pm.sequence = p.sequence;
        pm.kind = p.kind;
        pm.injections = p.injections;
        pm.guaranteed_count = p.injections;
        pm.max_spread = p.max_spread;
        const std::int64_t slot = horizon / p.injections;
        if (slot < p.max_spread + 2)
            throw SpecInfeasible("injections cannot fit the time horizon");
        const std::size_t len = p.sequence.size();
        for (std::uint32_t i = 0; i < p.injections; ++i) {
            const std::int64_t slot_start = slot * i;
            const std::int64_t jitter = static_cast<std::int64_t>(
                rng.below(static_cast<std::uint64_t>(slot - p.max_spread - 1)));
            std::int64_t t = slot_start + jitter;
            // strictly increasing offsets within max_spread
            std::int64_t slack = p.max_spread - (static_cast<std::int64_t>(len) - 1);
            std::vector<std::int64_t> stamps{t};
            for (std::size_t j = 1; j < len; ++j) {
                std::int64_t extra = static_cast<std::int64_t>(
                    rng.below(static_cast<std::uint64_t>(slack + 1)));
                slack -= extra;
                t += 1 + extra;
                stamps.push_back(t);
            }
            for (std::size_t j = 0; j < len; ++j) {
                events.push_back({p.sequence[j], stamps[j]});
                taken.emplace(p.sequence[j], stamps[j]);
            }
            pm.injection_timestamps.push_back(std::move(stamps));
        }
        w.manifest.patterns.push_back(std::move(pm));
    }

    std::uint64_t noise_emitted = 0;
    for (std::uint64_t k = 0; k < noise_target; ++k) {
        bool placed = false;
        for (int attempt = 0; attempt < 10000; ++attempt) {
            const auto& type = pool[rng.below(pool.size())];
            auto t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(horizon)));
            if (taken.emplace(type, t).second) {
                events.push_back({type, t});
                ++noise_emitted;
                placed = true;
                break;
            }
        }
        if (!placed)
            throw SpecInfeasible("cannot place noise events without collisions");
    }
    w.manifest.noise_events = noise_emitted;
    w.manifest.events = taken.size();

    w.log.queue = AlarmQueue::from_events(std::move(events));
    for (const auto& type : pool)
        w.log.descriptors[type] =
            AlarmDescriptor{1 + static_cast<int>(type.alarm_num % 5),
                            "synthetic alarm " + std::to_string(type.alarm_num)};
    return w;
}

namespace {

struct FlatEvent {
    std::int64_t t;
    std::uint16_t slot; // index into the sequence's distinct-type table
};

// Earliest end over every way of completing an occurrence that starts at
// event `s`. Searches all completion combinations; branches that can no
// longer improve the best end are cut (every deeper event is even later).
class CompletionSearch {
public:
    CompletionSearch(const std::vector<FlatEvent>& events,
                     const std::vector<std::uint16_t>& pattern, std::int64_t window)
        : events_(events), pattern_(pattern), window_(window) {}

    std::optional<std::int64_t> min_end_from(std::size_t s) {
        best_.reset();
        if (pattern_.size() == 1) {
            best_ = events_[s].t;
            return best_;
        }
        limit_ = events_[s].t + window_;
        walk(1, events_[s].t, s + 1);
        return best_;
    }

private:
    void walk(std::size_t pos, std::int64_t prev, std::size_t from) {
        for (std::size_t j = from; j < events_.size(); ++j) {
            if (events_[j].t > limit_)
                return;
            if (best_ && events_[j].t >= *best_)
                return;
            if (events_[j].slot != pattern_[pos] || events_[j].t <= prev)
                continue;
            if (pos + 1 == pattern_.size()) {
                best_ = events_[j].t;
                return; // later events only end later
            }
            walk(pos + 1, events_[j].t, j + 1);
        }
    }

    const std::vector<FlatEvent>& events_;
    const std::vector<std::uint16_t>& pattern_;
    std::int64_t window_;
    std::int64_t limit_ = 0;
    std::optional<std::int64_t> best_;
};

} // namespace

std::uint64_t oracle_count(const AlarmSequence& seq, const AlarmQueue& queue,
                           const WindowSpec& window, bool override_guard) {
    if (seq.empty())
        throw SynthError("cannot count an empty sequence");
    if (!override_guard && queue.event_count() > kOracleMaxEvents)
        throw InstanceTooLarge("queue exceeds the oracle guard of " +
                               std::to_string(kOracleMaxEvents) + " events");

    // map the sequence onto slots of its distinct types
    std::vector<AlarmType> distinct(seq.begin(), seq.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<std::uint16_t> pattern;
    pattern.reserve(seq.size());
    for (const auto& t : seq) {
        auto it = std::lower_bound(distinct.begin(), distinct.end(), t);
        pattern.push_back(static_cast<std::uint16_t>(it - distinct.begin()));
    }

    std::vector<FlatEvent> events;
    for (const auto& tuple : queue.tuples())
        for (const auto& type : tuple.types) {
            auto it = std::lower_bound(distinct.begin(), distinct.end(), type);
            if (it != distinct.end() && *it == type)
                events.push_back(
                    {tuple.timestamp, static_cast<std::uint16_t>(it - distinct.begin())});
        }

    const std::size_t n = events.size();
    CompletionSearch search(events, pattern, window.width);

    // best[i] = maximum occurrences among events[i..]; an occurrence either
    // starts at event i or the suffix result carries over
    std::vector<std::uint64_t> best(n + 1, 0);
    std::vector<std::int64_t> times(n);
    for (std::size_t i = 0; i < n; ++i)
        times[i] = events[i].t;
    for (std::size_t i = n; i-- > 0;) {
        best[i] = best[i + 1];
        if (events[i].slot != pattern[0])
            continue;
        auto end = search.min_end_from(i);
        if (!end)
            continue;
        auto next = std::upper_bound(times.begin() + static_cast<std::ptrdiff_t>(i),
                                     times.end(), *end) -
                    times.begin();
        best[i] = std::max(best[i], 1 + best[static_cast<std::size_t>(next)]);
    }
    return best[0];
}

FrequentSet oracle_mine(const AlarmQueue& queue, const WindowSpec& window,
                        const SupportThreshold& threshold, std::size_t max_len) {
    if (max_len > 4)
        throw InstanceTooLarge("oracle_mine is limited to max_len <= 4");
    if (queue.event_count() > 300)
        throw InstanceTooLarge("oracle_mine is limited to 300 events");
    std::set<AlarmType> present;
    for (const auto& tuple : queue.tuples())
        present.insert(tuple.types.begin(), tuple.types.end());
    if (present.size() > 8)
        throw InstanceTooLarge("oracle_mine is limited to 8 present alarm types");

    FrequentSet result;
    if (queue.empty())
        return result;
    const std::vector<AlarmType> alphabet(present.begin(), present.end());
    const std::uint64_t min_count = threshold.effective_count(queue.size());
    const double tuples = static_cast<double>(queue.size());

    for (std::size_t m = 1; m <= max_len; ++m) {
        std::vector<FrequentEntry> entries;
        std::vector<std::size_t> odo(m, 0);
        while (true) {
            AlarmSequence seq;
            seq.reserve(m);
            for (std::size_t i = 0; i < m; ++i)
                seq.push_back(alphabet[odo[i]]);
            auto c = oracle_count(seq, queue, window);
            if (c >= min_count)
                entries.push_back({std::move(seq), c, static_cast<double>(c) / tuples});
            // canonical order: increment the odometer from the right
            std::size_t i = m;
            while (i-- > 0) {
                if (++odo[i] < alphabet.size())
                    break;
                odo[i] = 0;
                if (i == 0)
                    goto level_done;
            }
        }
    level_done:
        result.set_level(m, std::move(entries));
    }
    return result;
}

} // namespace alcor
