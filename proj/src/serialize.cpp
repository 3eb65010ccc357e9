#include "alcor/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace alcor {

namespace {

using Json = nlohmann::ordered_json;

Json type_to_json(const AlarmType& t) {
    return Json::array({static_cast<int>(t.element.object_class), t.element.object_instance,
                        t.alarm_num});
}

Json sequence_to_json(const AlarmSequence& seq) {
    Json arr = Json::array();
    for (const auto& t : seq)
        arr.push_back(type_to_json(t));
    return arr;
}

AlarmType type_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3)
        throw IoError("alarm type must be a [class, instance, alarm_num] triple");
    auto cls = object_class_from_code(j[0].get<int>());
    if (!cls)
        throw UnknownClassCode(j[0].get<int>());
    return AlarmType{{*cls, j[1].get<std::uint32_t>()}, j[2].get<std::uint32_t>()};
}

AlarmSequence sequence_from_json(const Json& j) {
    AlarmSequence seq;
    for (const auto& t : j)
        seq.push_back(type_from_json(t));
    return seq;
}

} // namespace

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw IoError("short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
        throw IoError("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
}

std::string frequent_set_to_json(const FrequentSet& set, const FrequentSetMeta& meta) {
    Json j;
    j["format"] = "alcor-frequent-set";
    j["version"] = 1;
    j["window_seconds"] = meta.window_seconds;
    j["tuple_count"] = meta.tuple_count;
    j["min_count"] = meta.min_count;
    Json levels = Json::array();
    for (const auto& [m, entries] : set.by_length()) {
        Json level;
        level["length"] = m;
        Json seqs = Json::array();
        for (const auto& e : entries) {
            Json s;
            s["types"] = sequence_to_json(e.sequence);
            s["count"] = e.count;
            s["support"] = e.support;
            seqs.push_back(std::move(s));
        }
        level["sequences"] = std::move(seqs);
        levels.push_back(std::move(level));
    }
    j["levels"] = std::move(levels);
    return j.dump(2) + "\n";
}

void write_frequent_set_file(const std::string& path, const FrequentSet& set,
                             const FrequentSetMeta& meta) {
    atomic_write_file(path, frequent_set_to_json(set, meta));
}

LoadedFrequentSet read_frequent_set(std::istream& in) {
    Json j;
    try {
        j = Json::parse(in);
    } catch (const std::exception& e) {
        throw IoError(std::string("bad frequent-set file: ") + e.what());
    }
    if (j.value("format", "") != "alcor-frequent-set")
        throw IoError("not an alcor frequent-set file");
    LoadedFrequentSet out;
    out.meta.window_seconds = j.at("window_seconds").get<std::int64_t>();
    out.meta.tuple_count = j.at("tuple_count").get<std::uint64_t>();
    out.meta.min_count = j.at("min_count").get<std::uint64_t>();
    for (const auto& level : j.at("levels")) {
        std::vector<FrequentEntry> entries;
        for (const auto& s : level.at("sequences")) {
            FrequentEntry e;
            e.sequence = sequence_from_json(s.at("types"));
            e.count = s.at("count").get<std::uint64_t>();
            e.support = s.at("support").get<double>();
            entries.push_back(std::move(e));
        }
        out.set.set_level(level.at("length").get<std::size_t>(), std::move(entries));
    }
    return out;
}

LoadedFrequentSet read_frequent_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open frequent-set file: " + path);
    return read_frequent_set(in);
}

std::string rules_to_json(std::span<const CorrelationRule> rules, const RuleReportMeta& meta) {
    Json j;
    j["format"] = "alcor-rules";
    j["version"] = 1;
    j["window_seconds"] = meta.window_seconds;
    j["min_confidence"] = meta.min_confidence;
    Json arr = Json::array();
    for (const auto& r : rules) {
        Json rule;
        rule["antecedent"] = sequence_to_json(r.antecedent);
        rule["consequent"] = sequence_to_json(r.consequent);
        rule["confidence"] = r.confidence;
        rule["support"] = r.support;
        rule["antecedent_support"] = r.antecedent_support;
        rule["consequent_support"] = r.consequent_support;
        rule["whole_count"] = r.whole_count;
        rule["antecedent_count"] = r.antecedent_count;
        rule["consequent_count"] = r.consequent_count;
        rule["interval_seconds"] = r.interval;
        if (meta.diagnostics) {
            auto d = confidence_diagnostics(r.support, r.antecedent_support,
                                            r.consequent_support);
            rule["ratio_confidence"] =
                std::isfinite(d.ratio) ? Json(d.ratio) : Json(nullptr);
        }
        arr.push_back(std::move(rule));
    }
    j["rules"] = std::move(arr);
    return j.dump(2) + "\n";
}

void write_rules_file(const std::string& path, std::span<const CorrelationRule> rules,
                      const RuleReportMeta& meta) {
    atomic_write_file(path, rules_to_json(rules, meta));
}

void write_rules_text(std::ostream& out, std::span<const CorrelationRule> rules,
                      const RuleReportMeta& meta) {
    out << "# correlation rules (window " << meta.window_seconds << "s, min confidence "
        << meta.min_confidence << ")\n";
    char buf[64];
    for (const auto& r : rules) {
        auto render = [&out](const AlarmSequence& seq) {
            out << '(';
            for (std::size_t i = 0; i < seq.size(); ++i) {
                if (i)
                    out << ", ";
                out << to_string(seq[i]);
            }
            out << ')';
        };
        render(r.antecedent);
        out << " --" << r.interval << "s--> ";
        render(r.consequent);
        std::snprintf(buf, sizeof buf, " [conf=%.6f, supp=%.6f, W=", r.confidence, r.support);
        out << buf << r.interval << "]\n";
    }
}

std::string manifest_to_json(const WorkloadManifest& manifest) {
    Json j;
    j["format"] = "alcor-workload-manifest";
    j["version"] = 1;
    j["seed"] = manifest.seed;
    j["horizon_seconds"] = manifest.horizon;
    Json totals;
    totals["events"] = manifest.events;
    totals["noise_events"] = manifest.noise_events;
    totals["alarm_types"] = manifest.alarm_types;
    totals["planted_patterns"] = manifest.patterns.size();
    j["totals"] = std::move(totals);
    Json patterns = Json::array();
    for (const auto& p : manifest.patterns) {
        Json pj;
        pj["kind"] = to_string(p.kind);
        pj["sequence"] = sequence_to_json(p.sequence);
        pj["injections"] = p.injections;
        pj["guaranteed_count"] = p.guaranteed_count;
        pj["max_spread"] = p.max_spread;
        Json stamps = Json::array();
        for (const auto& inj : p.injection_timestamps)
            stamps.push_back(inj);
        pj["injection_timestamps"] = std::move(stamps);
        patterns.push_back(std::move(pj));
    }
    j["patterns"] = std::move(patterns);
    return j.dump(2) + "\n";
}

void write_manifest_file(const std::string& path, const WorkloadManifest& manifest) {
    atomic_write_file(path, manifest_to_json(manifest));
}

} // namespace alcor
