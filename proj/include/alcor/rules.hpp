#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "alcor/miner.hpp"

namespace alcor {

class RulesError : public Error {
public:
    using Error::Error;
};

class ZeroAntecedentSupport : public RulesError {
public:
    ZeroAntecedentSupport() : RulesError("antecedent support must be positive") {}
};

class NoSequencesAtLength : public RulesError {
public:
    explicit NoSequencesAtLength(std::size_t m);
};

class InconsistentInputs : public RulesError {
public:
    using RulesError::RulesError;
};

/// One mined correlation rule: antecedent then consequent, split from a
/// frequent sequence, with the interestingness-based confidence.
struct CorrelationRule {
    AlarmSequence antecedent;
    AlarmSequence consequent;
    AlarmSequence whole;
    double confidence = 0.0;
    double support = 0.0; // support of the whole sequence
    double antecedent_support = 0.0;
    double consequent_support = 0.0;
    std::uint64_t whole_count = 0;
    std::uint64_t antecedent_count = 0;
    std::uint64_t consequent_count = 0;
    std::int64_t interval = 0; // seconds; the mining window width
};

/// |p_whole / p_antecedent - p_consequent|: the deviation-from-independence
/// measure used as rule confidence. May exceed 1.
double rule_confidence(double p_whole, double p_antecedent, double p_consequent);

/// Both confidence formulas computed from one set of supports: the
/// deviation measure above and the ratio reading
/// |p_whole| / |p_antecedent - p_consequent| (infinity when the denominator
/// vanishes). Diagnostic only.
struct ConfidenceDiagnostics {
    double deviation = 0.0;
    double ratio = 0.0;
};

ConfidenceDiagnostics confidence_diagnostics(double p_whole, double p_antecedent,
                                             double p_consequent);

/// Repeated occurrence counting over one queue. All supports derived through
/// one instance share the same |DB| normalization.
class OccurrenceCounter {
public:
    explicit OccurrenceCounter(const AlarmQueue& queue);
    ~OccurrenceCounter();
    OccurrenceCounter(OccurrenceCounter&&) noexcept;
    OccurrenceCounter& operator=(OccurrenceCounter&&) noexcept;

    std::uint64_t count(const AlarmSequence& seq, const WindowSpec& window) const;
    std::size_t tuple_count() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Generates rules from every frequent sequence of length >= 2: by default
/// the antecedent ranges over proper non-empty prefixes (temporal
/// prefix -> suffix split); with all_splits every proper non-empty
/// subsequence is used instead. Supports missing from `frequent` are
/// recounted against the queue, so all three supports share one |DB|.
/// Emits rules with confidence >= min_conf, sorted by descending
/// confidence then canonical sequence order.
std::vector<CorrelationRule> generate_rules(const FrequentSet& frequent,
                                            const AlarmQueue& queue, const WindowSpec& window,
                                            double min_conf, bool all_splits = false);

/// Arithmetic mean of the occurrence counts of all length-m sequences.
double average_occurrence_times(const FrequentSet& frequent, std::size_t m);

} // namespace alcor
