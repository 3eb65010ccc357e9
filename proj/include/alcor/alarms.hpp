#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "alcor/topology.hpp"

namespace alcor {

/// Identity of a kind of alarm on a specific network element. Descriptive
/// text is deliberately not part of the identity.
struct AlarmType {
    ElementId element;
    std::uint32_t alarm_num = 0;

    auto operator<=>(const AlarmType&) const = default;
};

std::string to_string(const AlarmType& t);

/// Free-text metadata carried alongside an alarm type; never used in
/// equality or mining.
struct AlarmDescriptor {
    int priority = 0;
    std::string description;
};

struct AlarmEvent {
    AlarmType type;
    std::int64_t timestamp = 0; // seconds

    auto operator<=>(const AlarmEvent&) const = default;
};

/// The alarm types raised concurrently at one timestamp. Types are kept
/// sorted and unique.
struct AlarmTuple {
    std::int64_t timestamp = 0;
    std::vector<AlarmType> types;

    std::size_t length() const { return types.size(); }
    bool contains(const AlarmType& t) const;

    bool operator==(const AlarmTuple&) const = default;
};

/// Strictly time-ordered list of alarm tuples — the mining database.
class AlarmQueue {
public:
    AlarmQueue() = default;

    /// Groups events by timestamp into tuples (duplicates collapsed) and
    /// orders them. Input need not be sorted.
    static AlarmQueue from_events(std::vector<AlarmEvent> events);

    const std::vector<AlarmTuple>& tuples() const { return tuples_; }
    std::size_t size() const { return tuples_.size(); }
    bool empty() const { return tuples_.empty(); }

    /// Total events (sum of tuple lengths).
    std::size_t event_count() const;

    bool operator==(const AlarmQueue&) const = default;

private:
    std::vector<AlarmTuple> tuples_;
};

/// A parsed alarm log: the queue plus per-type descriptor metadata.
struct AlarmLog {
    AlarmQueue queue;
    std::map<AlarmType, AlarmDescriptor> descriptors;
};

class AlarmParseError : public Error {
public:
    using Error::Error;
};

class MalformedLine : public AlarmParseError {
public:
    MalformedLine(std::size_t lineno, const std::string& what);
    std::size_t lineno;
};

class EmptyLog : public AlarmParseError {
public:
    EmptyLog() : AlarmParseError("alarm log contains no events") {}
};

/// Parses the alarm log format:
///   timestamp,object_class,object_instance,alarm_num,priority,description
/// where timestamp is integer seconds or YYYY-MM-DD-HH. The description may
/// contain commas. `#` comments and blank lines are ignored. Every event's
/// element must exist in the model.
AlarmLog parse_alarm_log(std::istream& in, const ConfigModel& model);

AlarmLog load_alarm_log_file(const std::string& path, const ConfigModel& model);

/// Serializes a log back to the line format (integer-second timestamps).
/// Parsing the output reproduces the queue exactly.
void write_alarm_log(std::ostream& out, const AlarmLog& log);

struct QueueStats {
    std::uint64_t events = 0;
    std::uint64_t tuples = 0;
    std::uint64_t distinct_types = 0;
    std::int64_t span = 0; // last timestamp - first timestamp

    bool operator==(const QueueStats&) const = default;
};

QueueStats queue_stats(const AlarmQueue& queue);

/// Converts a civil date-hour to seconds since the epoch (UTC, no leap
/// seconds), used for the YYYY-MM-DD-HH timestamp form.
std::int64_t civil_hour_to_seconds(int year, int month, int day, int hour);

} // namespace alcor
