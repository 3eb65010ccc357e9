#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alcor/alarms.hpp"
#include "alcor/topology.hpp"

namespace alcor {

/// Ordered list of alarm types — the unit of mining. Order is significant
/// and repeats are allowed. Canonical ordering is plain lexicographic
/// comparison of the (class, instance, alarm_num) triples.
using AlarmSequence = std::vector<AlarmType>;

std::string to_string(const AlarmSequence& seq);

/// Maximum timestamp span of one occurrence, in seconds.
struct WindowSpec {
    std::int64_t width = 1;

    explicit WindowSpec(std::int64_t w);
};

/// Minimum support, either as a raw occurrence count or as a fraction of
/// the queue length.
class SupportThreshold {
public:
    static SupportThreshold count(std::uint64_t value);
    static SupportThreshold fraction(double value); // in (0, 1]

    bool is_fraction() const { return is_fraction_; }
    std::uint64_t count_value() const { return count_; }
    double fraction_value() const { return fraction_; }

    /// The count a sequence must reach: the raw count, or
    /// ceil(fraction * tuples) with a floor of 1.
    std::uint64_t effective_count(std::size_t tuple_count) const;

private:
    SupportThreshold() = default;
    bool is_fraction_ = false;
    std::uint64_t count_ = 1;
    double fraction_ = 0.0;
};

enum class ConstraintMode { None, Inter, Intra };
enum class ConstraintApplication { Generation, Output };
enum class ScopeMode { Subtree, ClassThreshold };

const char* to_string(ConstraintMode m);

struct ConstraintConfig {
    ConstraintMode mode = ConstraintMode::None;
    std::optional<ElementId> scope;
    ConstraintApplication application = ConstraintApplication::Generation;
    ScopeMode scope_mode = ScopeMode::Subtree;
};

struct FrequentEntry {
    AlarmSequence sequence;
    std::uint64_t count = 0;
    double support = 0.0;

    bool operator==(const FrequentEntry&) const = default;
};

/// Frequent sequences grouped by length. Within each length entries are
/// unique and canonically ordered.
class FrequentSet {
public:
    const std::map<std::size_t, std::vector<FrequentEntry>>& by_length() const {
        return by_length_;
    }
    const std::vector<FrequentEntry>* level(std::size_t m) const;
    std::size_t total() const;
    std::size_t max_length() const;

    void set_level(std::size_t m, std::vector<FrequentEntry> entries);
    const FrequentEntry* find(const AlarmSequence& seq) const;

    bool operator==(const FrequentSet&) const = default;

private:
    std::map<std::size_t, std::vector<FrequentEntry>> by_length_;
};

class MinerError : public Error {
public:
    using Error::Error;
};

class EmptyQueue : public MinerError {
public:
    EmptyQueue() : MinerError("alarm queue is empty") {}
};

class MixedLengths : public MinerError {
public:
    MixedLengths() : MinerError("input sequences do not all have the same length") {}
};

/// Counts the occurrences of `seq` in the queue: a leftmost scan repeatedly
/// finds the earliest-completing valid occurrence (elements mapped in order
/// to strictly increasing timestamps, span at most the window width) and
/// resumes strictly after its end, so counted occurrences never overlap in
/// time. This equals the maximum number of such non-overlapping occurrences.
/// For a single-element sequence this is the number of tuples containing
/// the type.
std::uint64_t count_occurrences(const AlarmSequence& seq, const AlarmQueue& queue,
                                const WindowSpec& window);

/// Occurrence count divided by the number of tuples in the queue.
double support(const AlarmSequence& seq, const AlarmQueue& queue, const WindowSpec& window);

/// True iff all elements of the sequence share one object class.
bool satisfies_intra(const AlarmSequence& seq);

/// True iff at least two elements have different object classes. For
/// length >= 2 this is the exact negation of satisfies_intra; length-1
/// sequences are never inter-correlated.
bool satisfies_inter(const AlarmSequence& seq);

/// True iff every element of the sequence is in scope. Subtree mode tests
/// containment under scope_root in the configuration tree; class-threshold
/// mode tests object_class >= scope_root's class code.
bool satisfies_scope(const AlarmSequence& seq, const ConfigModel& model,
                     const ElementId& scope_root, ScopeMode mode = ScopeMode::Subtree);

bool satisfies_mode(const AlarmSequence& seq, ConstraintMode mode);

/// Joins frequent length-m sequences into length-(m+1) candidates: alpha
/// extended by beta's last element whenever alpha's last m-1 elements equal
/// beta's first m-1. At m = 1 every ordered pair joins (including a type
/// with itself); at m >= 2 a sequence self-joins only when the overlap
/// condition allows it (uniform repeats). Output is deduplicated and
/// canonically ordered.
std::vector<AlarmSequence> generate_candidates(std::span<const AlarmSequence> frequent_m);

/// Keeps candidates whose every drop-one-position subsequence is frequent.
std::vector<AlarmSequence> prune_candidates(std::span<const AlarmSequence> candidates,
                                            std::span<const AlarmSequence> frequent_m);

/// Level-wise frequent-sequence discovery. Scope restricts the starting
/// alphabet; the inter/intra constraint is applied per the configured
/// application point (during generation, reproducing the constrained search
/// and its pruning, or only on the reported output, preserving
/// completeness). Deterministic for any worker count.
FrequentSet mine(const AlarmQueue& queue, const ConfigModel& model, const WindowSpec& window,
                 const SupportThreshold& threshold, const ConstraintConfig& constraints = {},
                 unsigned workers = 1);

} // namespace alcor
