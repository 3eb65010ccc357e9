#include "alcor/rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace alcor {

NoSequencesAtLength::NoSequencesAtLength(std::size_t m)
    : RulesError("no frequent sequences of length " + std::to_string(m)) {}

double rule_confidence(double p_whole, double p_antecedent, double p_consequent) {
    if (!(p_antecedent > 0.0))
        throw ZeroAntecedentSupport();
    if (p_whole < 0.0 || p_whole > 1.0 || p_antecedent > 1.0 || p_consequent < 0.0 ||
        p_consequent > 1.0)
        throw RulesError("supports must lie in [0,1]");
    return std::fabs(p_whole / p_antecedent - p_consequent);
}

ConfidenceDiagnostics confidence_diagnostics(double p_whole, double p_antecedent,
                                             double p_consequent) {
    ConfidenceDiagnostics d;
    d.deviation = rule_confidence(p_whole, p_antecedent, p_consequent);
    double denom = std::fabs(p_antecedent - p_consequent);
    d.ratio = denom == 0.0 ? std::numeric_limits<double>::infinity()
                           : std::fabs(p_whole) / denom;
    return d;
}

struct OccurrenceCounter::Impl {
    AlarmQueue queue;
    std::map<AlarmSequence, std::uint64_t> cache;
};

OccurrenceCounter::OccurrenceCounter(const AlarmQueue& queue) : impl_(new Impl{queue, {}}) {}
OccurrenceCounter::~OccurrenceCounter() = default;
OccurrenceCounter::OccurrenceCounter(OccurrenceCounter&&) noexcept = default;
OccurrenceCounter& OccurrenceCounter::operator=(OccurrenceCounter&&) noexcept = default;

std::uint64_t OccurrenceCounter::count(const AlarmSequence& seq,
                                       const WindowSpec& window) const {
    auto it = impl_->cache.find(seq);
    if (it != impl_->cache.end())
        return it->second;
    auto c = count_occurrences(seq, impl_->queue, window);
    impl_->cache.emplace(seq, c);
    return c;
}

std::size_t OccurrenceCounter::tuple_count() const {
    return impl_->queue.size();
}

namespace {

struct Split {
    AlarmSequence antecedent;
    AlarmSequence consequent;
};

std::vector<Split> prefix_splits(const AlarmSequence& whole) {
    std::vector<Split> out;
    for (std::size_t j = 1; j < whole.size(); ++j)
        out.push_back({AlarmSequence(whole.begin(), whole.begin() + j),
                       AlarmSequence(whole.begin() + j, whole.end())});
    return out;
}

std::vector<Split> subsequence_splits(const AlarmSequence& whole) {
    const std::size_t m = whole.size();
    std::set<std::pair<AlarmSequence, AlarmSequence>> seen;
    std::vector<Split> out;
    for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
        Split s;
        for (std::size_t i = 0; i < m; ++i)
            (mask & (1u << i) ? s.antecedent : s.consequent).push_back(whole[i]);
        if (seen.emplace(s.antecedent, s.consequent).second)
            out.push_back(std::move(s));
    }
    return out;
}

} // namespace

std::vector<CorrelationRule> generate_rules(const FrequentSet& frequent,
                                            const AlarmQueue& queue, const WindowSpec& window,
                                            double min_conf, bool all_splits) {
    if (min_conf < 0.0)
        throw RulesError("min_conf must be non-negative");
    if (queue.empty())
        throw EmptyQueue();

    std::set<AlarmType> present;
    for (const auto& tuple : queue.tuples())
        present.insert(tuple.types.begin(), tuple.types.end());
    for (const auto& [m, entries] : frequent.by_length())
        for (const auto& e : entries)
            for (const auto& t : e.sequence)
                if (!present.contains(t))
                    throw InconsistentInputs("frequent sequence references alarm type " +
                                             to_string(t) + " absent from the queue");

    OccurrenceCounter counter(queue);
    const double tuples = static_cast<double>(queue.size());
    auto lookup = [&](const AlarmSequence& seq) -> std::pair<std::uint64_t, double> {
        if (const auto* e = frequent.find(seq))
            return {e->count, e->support};
        auto c = counter.count(seq, window);
        return {c, static_cast<double>(c) / tuples};
    };

    std::vector<CorrelationRule> rules;
    for (const auto& [m, entries] : frequent.by_length()) {
        if (m < 2)
            continue;
        if (all_splits && m > 20)
            throw RulesError("all-splits enumeration is limited to length 20");
        for (const auto& whole : entries) {
            auto splits = all_splits ? subsequence_splits(whole.sequence)
                                     : prefix_splits(whole.sequence);
            for (auto& s : splits) {
                auto [ac, as] = lookup(s.antecedent);
                auto [cc, cs] = lookup(s.consequent);
                double conf = rule_confidence(whole.support, as, cs);
                if (conf < min_conf)
                    continue;
                CorrelationRule r;
                r.antecedent = std::move(s.antecedent);
                r.consequent = std::move(s.consequent);
                r.whole = whole.sequence;
                r.confidence = conf;
                r.support = whole.support;
                r.antecedent_support = as;
                r.consequent_support = cs;
                r.whole_count = whole.count;
                r.antecedent_count = ac;
                r.consequent_count = cc;
                r.interval = window.width;
                rules.push_back(std::move(r));
            }
        }
    }
    std::sort(rules.begin(), rules.end(), [](const CorrelationRule& a, const CorrelationRule& b) {
        if (a.confidence != b.confidence)
            return a.confidence > b.confidence;
        if (a.whole != b.whole)
            return a.whole < b.whole;
        return a.antecedent < b.antecedent;
    });
    return rules;
}

double average_occurrence_times(const FrequentSet& frequent, std::size_t m) {
    const auto* level = frequent.level(m);
    if (!level || level->empty())
        throw NoSequencesAtLength(m);
    double sum = 0.0;
    for (const auto& e : *level)
        sum += static_cast<double>(e.count);
    return sum / static_cast<double>(level->size());
}

} // namespace alcor
