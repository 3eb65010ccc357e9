#include "alcor/alarms.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace alcor {

std::string to_string(const AlarmType& t) {
    std::ostringstream os;
    os << '(' << static_cast<int>(t.element.object_class) << ',' << t.element.object_instance
       << ',' << t.alarm_num << ')';
    return os.str();
}

bool AlarmTuple::contains(const AlarmType& t) const {
    return std::binary_search(types.begin(), types.end(), t);
}

AlarmQueue AlarmQueue::from_events(std::vector<AlarmEvent> events) {
    std::sort(events.begin(), events.end(), [](const AlarmEvent& a, const AlarmEvent& b) {
        return a.timestamp != b.timestamp ? a.timestamp < b.timestamp : a.type < b.type;
    });
    AlarmQueue q;
    for (const auto& ev : events) {
        if (q.tuples_.empty() || q.tuples_.back().timestamp != ev.timestamp) {
            q.tuples_.push_back({ev.timestamp, {ev.type}});
        } else if (q.tuples_.back().types.back() != ev.type) { // duplicates collapse
            q.tuples_.back().types.push_back(ev.type);
        }
    }
    return q;
}

std::size_t AlarmQueue::event_count() const {
    std::size_t n = 0;
    for (const auto& t : tuples_)
        n += t.length();
    return n;
}

MalformedLine::MalformedLine(std::size_t line, const std::string& what)
    : AlarmParseError("alarm log line " + std::to_string(line) + ": " + what), lineno(line) {}

std::int64_t civil_hour_to_seconds(int year, int month, int day, int hour) {
    // days-from-civil (Howard Hinnant's algorithm), epoch 1970-01-01
    const int y = year - (month <= 2);
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(month + (month > 2 ? -3 : 9)) + 2) / 5 +
                         static_cast<unsigned>(day) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    const std::int64_t days = static_cast<std::int64_t>(era) * 146097 +
                              static_cast<std::int64_t>(doe) - 719468;
    return days * 86400 + static_cast<std::int64_t>(hour) * 3600;
}

namespace {

bool is_blank_or_comment(const std::string& line) {
    for (char ch : line) {
        if (ch == '#')
            return true;
        if (!std::isspace(static_cast<unsigned char>(ch)))
            return false;
    }
    return true;
}

int days_in_month(int year, int month) {
    static const int d[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2) {
        bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
        return leap ? 29 : 28;
    }
    return d[month - 1];
}

std::int64_t parse_timestamp(const std::string& field, std::size_t lineno) {
    // integer seconds, or YYYY-MM-DD-HH
    if (field.find('-') == std::string::npos || (!field.empty() && field[0] == '-')) {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc{} || p != field.data() + field.size())
            throw MalformedLine(lineno, "bad timestamp '" + field + "'");
        if (v < 0)
            throw MalformedLine(lineno, "negative timestamp");
        return v;
    }
    int part[4];
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        std::size_t next = field.find('-', pos);
        std::string piece =
            field.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (piece.empty())
            throw MalformedLine(lineno, "bad timestamp '" + field + "'");
        auto [p, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), part[i]);
        if (ec != std::errc{} || p != piece.data() + piece.size())
            throw MalformedLine(lineno, "bad timestamp '" + field + "'");
        if (i < 3) {
            if (next == std::string::npos)
                throw MalformedLine(lineno, "bad timestamp '" + field + "'");
            pos = next + 1;
        } else if (next != std::string::npos) {
            throw MalformedLine(lineno, "bad timestamp '" + field + "'");
        }
    }
    auto [year, month, day, hour] = std::tuple{part[0], part[1], part[2], part[3]};
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month) || hour < 0 ||
        hour > 23)
        throw MalformedLine(lineno, "bad date-hour '" + field + "'");
    std::int64_t s = civil_hour_to_seconds(year, month, day, hour);
    if (s < 0)
        throw MalformedLine(lineno, "timestamp before epoch: '" + field + "'");
    return s;
}

long long parse_uint_field(const std::string& s, std::size_t lineno, const char* what) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v < 0)
        throw MalformedLine(lineno, std::string("bad ") + what + " '" + s + "'");
    return v;
}

} // namespace

AlarmLog parse_alarm_log(std::istream& in, const ConfigModel& model) {
    std::vector<AlarmEvent> events;
    std::map<AlarmType, AlarmDescriptor> descriptors;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank_or_comment(line))
            continue;
        // split the first five fields on commas; the rest is the description
        std::string fields[5];
        std::size_t pos = 0;
        for (int i = 0; i < 5; ++i) {
            std::size_t next = line.find(',', pos);
            if (next == std::string::npos)
                throw MalformedLine(lineno, "expected 6 comma-separated fields");
            fields[i] = line.substr(pos, next - pos);
            pos = next + 1;
        }
        std::string description = line.substr(pos);

        std::int64_t ts = parse_timestamp(fields[0], lineno);
        long long cls = parse_uint_field(fields[1], lineno, "object_class");
        long long inst = parse_uint_field(fields[2], lineno, "object_instance");
        long long num = parse_uint_field(fields[3], lineno, "alarm_num");
        long long prio = parse_uint_field(fields[4], lineno, "priority");

        auto oc = object_class_from_code(static_cast<int>(cls));
        if (!oc)
            throw MalformedLine(lineno, "unknown object class " + std::to_string(cls));
        ElementId element{*oc, static_cast<std::uint32_t>(inst)};
        if (!model.contains(element))
            throw UnknownElement(element);

        AlarmType type{element, static_cast<std::uint32_t>(num)};
        events.push_back({type, ts});
        auto [it, inserted] = descriptors.try_emplace(
            type, AlarmDescriptor{static_cast<int>(prio), description});
        (void)it;
        (void)inserted;
    }
    if (events.empty())
        throw EmptyLog();
    return AlarmLog{AlarmQueue::from_events(std::move(events)), std::move(descriptors)};
}

AlarmLog load_alarm_log_file(const std::string& path, const ConfigModel& model) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open alarm log: " + path);
    return parse_alarm_log(in, model);
}

void write_alarm_log(std::ostream& out, const AlarmLog& log) {
    out << "# timestamp,object_class,object_instance,alarm_num,priority,description\n";
    for (const auto& tuple : log.queue.tuples()) {
        for (const auto& type : tuple.types) {
            const AlarmDescriptor* d = nullptr;
            if (auto it = log.descriptors.find(type); it != log.descriptors.end())
                d = &it->second;
            out << tuple.timestamp << ',' << static_cast<int>(type.element.object_class) << ','
                << type.element.object_instance << ',' << type.alarm_num << ','
                << (d ? d->priority : 0) << ',' << (d ? d->description : "") << '\n';
        }
    }
}

QueueStats queue_stats(const AlarmQueue& queue) {
    QueueStats s;
    std::set<AlarmType> distinct;
    for (const auto& t : queue.tuples()) {
        s.events += t.length();
        distinct.insert(t.types.begin(), t.types.end());
    }
    s.tuples = queue.size();
    s.distinct_types = distinct.size();
    if (!queue.empty())
        s.span = queue.tuples().back().timestamp - queue.tuples().front().timestamp;
    return s;
}

} // namespace alcor
