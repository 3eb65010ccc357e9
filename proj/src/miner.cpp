#include "alcor/miner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace alcor {

std::string to_string(const AlarmSequence& seq) {
    std::ostringstream os;
    os << "<";
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i)
            os << " ";
        os << to_string(seq[i]);
    }
    os << ">";
    return os.str();
}

WindowSpec::WindowSpec(std::int64_t w) : width(w) {
    if (w < 1)
        throw MinerError("window width must be at least 1 second");
}

SupportThreshold SupportThreshold::count(std::uint64_t value) {
    if (value == 0)
        throw MinerError("support count must be positive");
    SupportThreshold t;
    t.is_fraction_ = false;
    t.count_ = value;
    return t;
}

SupportThreshold SupportThreshold::fraction(double value) {
    if (!(value > 0.0) || value > 1.0)
        throw MinerError("support fraction must be in (0,1]");
    SupportThreshold t;
    t.is_fraction_ = true;
    t.fraction_ = value;
    return t;
}

std::uint64_t SupportThreshold::effective_count(std::size_t tuple_count) const {
    if (!is_fraction_)
        return count_;
    auto c = static_cast<std::uint64_t>(
        std::ceil(fraction_ * static_cast<double>(tuple_count)));
    return std::max<std::uint64_t>(c, 1);
}

const char* to_string(ConstraintMode m) {
    switch (m) {
    case ConstraintMode::None: return "Nocons";
    case ConstraintMode::Inter: return "Inter";
    case ConstraintMode::Intra: return "Intra";
    }
    return "?";
}

const std::vector<FrequentEntry>* FrequentSet::level(std::size_t m) const {
    auto it = by_length_.find(m);
    return it == by_length_.end() ? nullptr : &it->second;
}

std::size_t FrequentSet::total() const {
    std::size_t n = 0;
    for (const auto& [m, entries] : by_length_)
        n += entries.size();
    return n;
}

std::size_t FrequentSet::max_length() const {
    std::size_t m = 0;
    for (const auto& [len, entries] : by_length_)
        if (!entries.empty())
            m = std::max(m, len);
    return m;
}

void FrequentSet::set_level(std::size_t m, std::vector<FrequentEntry> entries) {
    if (entries.empty())
        by_length_.erase(m);
    else
        by_length_[m] = std::move(entries);
}

const FrequentEntry* FrequentSet::find(const AlarmSequence& seq) const {
    const auto* lvl = level(seq.size());
    if (!lvl)
        return nullptr;
    auto it = std::lower_bound(lvl->begin(), lvl->end(), seq,
                               [](const FrequentEntry& e, const AlarmSequence& s) {
                                   return e.sequence < s;
                               });
    if (it != lvl->end() && it->sequence == seq)
        return &*it;
    return nullptr;
}

namespace {

// Timestamps of each position's alarm type, sorted ascending. Positions with
// equal types share one array but keep independent cursors.
using PositionLists = std::vector<const std::vector<std::int64_t>*>;

// Leftmost scan: repeatedly match the earliest completable occurrence and
// resume strictly after its end, so occurrences never overlap in time.
// Cursors only move forward: once an event is too early for the current
// chain it is too early for every later chain as well.
std::uint64_t count_on_lists(const PositionLists& lists, std::int64_t window) {
    const std::size_t m = lists.size();
    for (const auto* l : lists)
        if (l == nullptr || l->empty())
            return 0;

    std::vector<std::size_t> cur(m, 0);
    std::int64_t last_end = std::numeric_limits<std::int64_t>::min();
    std::uint64_t count = 0;

    const auto& starts = *lists[0];
    while (true) {
        while (cur[0] < starts.size() && starts[cur[0]] <= last_end)
            ++cur[0];
        if (cur[0] >= starts.size())
            break;

        const std::int64_t start = starts[cur[0]];
        const std::int64_t limit = start + window;
        std::int64_t prev = start;
        bool matched = true;
        for (std::size_t p = 1; p < m; ++p) {
            const auto& list = *lists[p];
            while (cur[p] < list.size() && list[cur[p]] <= prev)
                ++cur[p];
            if (cur[p] >= list.size())
                return count; // this position can never be filled again
            if (list[cur[p]] > limit) {
                matched = false; // window overflow: try the next start
                break;
            }
            prev = list[cur[p]];
        }
        if (matched) {
            ++count;
            last_end = prev;
        } else {
            ++cur[0];
        }
    }
    return count;
}

struct TypeEvents {
    std::map<AlarmType, std::vector<std::int64_t>> by_type;

    static TypeEvents build(const AlarmQueue& queue) {
        TypeEvents te;
        for (const auto& tuple : queue.tuples())
            for (const auto& type : tuple.types)
                te.by_type[type].push_back(tuple.timestamp);
        return te;
    }

    const std::vector<std::int64_t>* find(const AlarmType& t) const {
        auto it = by_type.find(t);
        return it == by_type.end() ? nullptr : &it->second;
    }
};

std::uint64_t count_with_index(const TypeEvents& index, const AlarmSequence& seq,
                               std::int64_t window) {
    PositionLists lists;
    lists.reserve(seq.size());
    for (const auto& t : seq) {
        const auto* l = index.find(t);
        if (!l)
            return 0;
        lists.push_back(l);
    }
    return count_on_lists(lists, window);
}

struct SequenceHash {
    std::size_t operator()(const AlarmSequence& s) const {
        std::size_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        for (const auto& t : s) {
            mix(static_cast<std::uint64_t>(t.element.object_class));
            mix(t.element.object_instance);
            mix(t.alarm_num);
        }
        return h;
    }
};

} // namespace

std::uint64_t count_occurrences(const AlarmSequence& seq, const AlarmQueue& queue,
                                const WindowSpec& window) {
    if (seq.empty())
        throw MinerError("cannot count an empty sequence");
    auto index = TypeEvents::build(queue);
    return count_with_index(index, seq, window.width);
}

double support(const AlarmSequence& seq, const AlarmQueue& queue, const WindowSpec& window) {
    if (queue.empty())
        throw EmptyQueue();
    return static_cast<double>(count_occurrences(seq, queue, window)) /
           static_cast<double>(queue.size());
}

bool satisfies_intra(const AlarmSequence& seq) {
    if (seq.empty())
        throw MinerError("empty sequence");
    for (const auto& t : seq)
        if (t.element.object_class != seq.front().element.object_class)
            return false;
    return true;
}

bool satisfies_inter(const AlarmSequence& seq) {
    if (seq.empty())
        throw MinerError("empty sequence");
    return seq.size() >= 2 && !satisfies_intra(seq);
}

bool satisfies_scope(const AlarmSequence& seq, const ConfigModel& model,
                     const ElementId& scope_root, ScopeMode mode) {
    if (!model.contains(scope_root))
        throw UnknownElement(scope_root);
    for (const auto& t : seq) {
        if (mode == ScopeMode::ClassThreshold) {
            if (static_cast<int>(t.element.object_class) <
                static_cast<int>(scope_root.object_class))
                return false;
        } else if (!model.in_scope(scope_root, t.element)) {
            return false;
        }
    }
    return true;
}

bool satisfies_mode(const AlarmSequence& seq, ConstraintMode mode) {
    switch (mode) {
    case ConstraintMode::None: return true;
    case ConstraintMode::Inter: return satisfies_inter(seq);
    case ConstraintMode::Intra: return satisfies_intra(seq);
    }
    return true;
}

std::vector<AlarmSequence> generate_candidates(std::span<const AlarmSequence> frequent_m) {
    if (frequent_m.empty())
        return {};
    const std::size_t m = frequent_m.front().size();
    for (const auto& s : frequent_m)
        if (s.size() != m)
            throw MixedLengths();
    if (m == 0)
        throw MinerError("sequences of length zero are not valid");

    std::vector<AlarmSequence> out;
    if (m == 1) {
        for (const auto& a : frequent_m)
            for (const auto& b : frequent_m) {
                AlarmSequence g{a[0], b[0]};
                out.push_back(std::move(g));
            }
    } else {
        // join on alpha's last m-1 elements == beta's first m-1 elements;
        // a sequence joins with itself only when it is a uniform repeat
        // (the only way it can satisfy its own overlap condition)
        std::map<AlarmSequence, std::vector<std::size_t>> by_prefix;
        for (std::size_t i = 0; i < frequent_m.size(); ++i) {
            AlarmSequence prefix(frequent_m[i].begin(), frequent_m[i].end() - 1);
            by_prefix[std::move(prefix)].push_back(i);
        }
        for (const auto& a : frequent_m) {
            AlarmSequence suffix(a.begin() + 1, a.end());
            auto it = by_prefix.find(suffix);
            if (it == by_prefix.end())
                continue;
            for (std::size_t bi : it->second) {
                const auto& b = frequent_m[bi];
                AlarmSequence g = a;
                g.push_back(b.back());
                out.push_back(std::move(g));
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<AlarmSequence> prune_candidates(std::span<const AlarmSequence> candidates,
                                            std::span<const AlarmSequence> frequent_m) {
    std::unordered_set<AlarmSequence, SequenceHash> frequent(frequent_m.begin(),
                                                             frequent_m.end());
    std::vector<AlarmSequence> kept;
    kept.reserve(candidates.size());
    for (const auto& g : candidates) {
        bool ok = true;
        AlarmSequence sub(g.size() - 1, AlarmType{});
        for (std::size_t drop = 0; ok && drop < g.size(); ++drop) {
            sub.clear();
            for (std::size_t i = 0; i < g.size(); ++i)
                if (i != drop)
                    sub.push_back(g[i]);
            ok = frequent.contains(sub);
        }
        if (ok)
            kept.push_back(g);
    }
    return kept;
}

namespace {

// Counts all candidates over a read-only index; results land in candidate
// order so the outcome does not depend on the worker count.
std::vector<std::uint64_t> count_all(const TypeEvents& index,
                                     const std::vector<AlarmSequence>& candidates,
                                     std::int64_t window, unsigned workers) {
    std::vector<std::uint64_t> counts(candidates.size(), 0);
    if (workers <= 1 || candidates.size() < 2 * workers) {
        for (std::size_t i = 0; i < candidates.size(); ++i)
            counts[i] = count_with_index(index, candidates[i], window);
        return counts;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (candidates.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(candidates.size(), lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i)
                counts[i] = count_with_index(index, candidates[i], window);
        });
    }
    for (auto& t : pool)
        t.join();
    return counts;
}

} // namespace

FrequentSet mine(const AlarmQueue& queue, const ConfigModel& model, const WindowSpec& window,
                 const SupportThreshold& threshold, const ConstraintConfig& constraints,
                 unsigned workers) {
    if (queue.empty())
        throw EmptyQueue();
    if (constraints.scope && !model.contains(*constraints.scope))
        throw UnknownElement(*constraints.scope);

    const auto index = TypeEvents::build(queue);
    const double tuples = static_cast<double>(queue.size());
    const std::uint64_t min_count = threshold.effective_count(queue.size());
    const bool generation =
        constraints.application == ConstraintApplication::Generation;
    const bool has_mode = constraints.mode != ConstraintMode::None;

    FrequentSet result;

    // level 1: the alphabet, restricted by scope up front
    std::vector<FrequentEntry> level1;
    for (const auto& [type, stamps] : index.by_type) {
        if (constraints.scope &&
            !satisfies_scope({type}, model, *constraints.scope, constraints.scope_mode))
            continue;
        if (stamps.size() >= min_count)
            level1.push_back({{type}, stamps.size(),
                              static_cast<double>(stamps.size()) / tuples});
    }
    result.set_level(1, level1);

    std::vector<AlarmSequence> seed;
    seed.reserve(level1.size());
    for (const auto& e : level1)
        seed.push_back(e.sequence);

    for (std::size_t m = 2; !seed.empty(); ++m) {
        auto candidates = generate_candidates(seed);
        candidates = prune_candidates(candidates, seed);
        if (generation && has_mode)
            std::erase_if(candidates, [&](const AlarmSequence& s) {
                return !satisfies_mode(s, constraints.mode);
            });
        if (candidates.empty())
            break;

        auto counts = count_all(index, candidates, window.width, workers);
        std::vector<FrequentEntry> entries;
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (counts[i] >= min_count)
                entries.push_back({candidates[i], counts[i],
                                   static_cast<double>(counts[i]) / tuples});

        seed.clear();
        for (const auto& e : entries)
            seed.push_back(e.sequence);
        result.set_level(m, std::move(entries));
    }

    if (!generation && has_mode) {
        FrequentSet filtered;
        for (const auto& [m, entries] : result.by_length()) {
            if (m < 2) {
                filtered.set_level(m, entries);
                continue;
            }
            std::vector<FrequentEntry> kept;
            for (const auto& e : entries)
                if (satisfies_mode(e.sequence, constraints.mode))
                    kept.push_back(e);
            filtered.set_level(m, std::move(kept));
        }
        return filtered;
    }
    return result;
}

} // namespace alcor
