#include "roadprio/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace roadprio {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& context, const std::string& message) {
    throw ValidationError(context + ": " + message);
}

const json& require_field(const json& obj, const char* key, const std::string& context) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(context, std::string("missing required field \"") + key + "\"");
    }
    return *it;
}

double number_field(const json& obj, const char* key, const std::string& context) {
    const json& value = require_field(obj, key, context);
    if (!value.is_number()) {
        fail(context, std::string("field \"") + key + "\" must be a number");
    }
    return value.get<double>();
}

std::array<double, 2> point_field(const json& obj, const char* key, const std::string& context) {
    const json& value = require_field(obj, key, context);
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
        fail(context, std::string("field \"") + key + "\" must be an [x, y] pair");
    }
    return {value[0].get<double>(), value[1].get<double>()};
}

SegmentKind parse_kind(const json& value, const std::string& context) {
    if (value.is_string()) {
        const auto& s = value.get_ref<const std::string&>();
        if (s == "left") return SegmentKind::LeftTurn;
        if (s == "right") return SegmentKind::RightTurn;
        if (s == "straight") return SegmentKind::Straight;
    }
    fail(context, "field \"kind\" must be \"left\", \"right\" or \"straight\"");
}

Label parse_label(const json& value, const std::string& context) {
    if (value.is_string()) {
        const auto& s = value.get_ref<const std::string&>();
        if (s == "safe") return Label::Safe;
        if (s == "unsafe") return Label::Unsafe;
    }
    fail(context, "field \"label\" must be \"safe\" or \"unsafe\"");
}

RoadScenario parse_scenario(const json& obj, std::size_t record_index) {
    const std::string context = "corpus record " + std::to_string(record_index);
    if (!obj.is_object()) {
        fail(context, "expected a scenario object");
    }

    RoadScenario s;
    const json& id = require_field(obj, "id", context);
    if (!id.is_string()) {
        fail(context, "field \"id\" must be a string");
    }
    s.id = id.get<std::string>();
    s.start_point = point_field(obj, "start", context);
    s.end_point = point_field(obj, "end", context);
    s.cost_s = number_field(obj, "cost_s", context);
    if (auto it = obj.find("label"); it != obj.end()) {
        s.label = parse_label(*it, context);
    }

    const json& segments = require_field(obj, "segments", context);
    if (!segments.is_array()) {
        fail(context, "field \"segments\" must be an array");
    }
    s.segments.reserve(segments.size());
    for (std::size_t k = 0; k < segments.size(); ++k) {
        const std::string seg_context = context + ", segment " + std::to_string(k);
        const json& seg = segments[k];
        if (!seg.is_object()) {
            fail(seg_context, "expected a segment object");
        }
        RoadSegment r;
        r.kind = parse_kind(require_field(seg, "kind", seg_context), seg_context);
        r.angle_deg = number_field(seg, "angle_deg", seg_context);
        r.pivot_radius = number_field(seg, "pivot_radius", seg_context);
        r.length = number_field(seg, "length", seg_context);
        s.segments.push_back(r);
    }

    validate_scenario(s, context);
    return s;
}

} // namespace

void validate_scenario(const RoadScenario& s, const std::string& context) {
    if (s.id.empty()) {
        fail(context, "field \"id\" must be non-empty");
    }
    if (s.segments.empty()) {
        fail(context, "field \"segments\" must be non-empty");
    }
    if (!(s.cost_s > 0.0) || !std::isfinite(s.cost_s)) {
        fail(context, "field \"cost_s\" must be a positive number");
    }
    for (std::size_t k = 0; k < s.segments.size(); ++k) {
        const RoadSegment& seg = s.segments[k];
        const std::string seg_context = context + ", segment " + std::to_string(k);
        if (!std::isfinite(seg.angle_deg) || !std::isfinite(seg.pivot_radius) ||
            !std::isfinite(seg.length)) {
            fail(seg_context, "segment values must be finite");
        }
        if (!(seg.length > 0.0)) {
            fail(seg_context, "field \"length\" must be positive");
        }
        if (seg.kind == SegmentKind::Straight) {
            if (seg.angle_deg != 0.0 || seg.pivot_radius != 0.0) {
                fail(seg_context, "straight segments must have angle_deg == 0 and pivot_radius == 0");
            }
        } else {
            if (!(seg.angle_deg > 0.0) || !(seg.pivot_radius > 0.0)) {
                fail(seg_context, "turn segments must have angle_deg > 0 and pivot_radius > 0");
            }
        }
    }
}

std::vector<RoadScenario> parse_corpus(std::string_view json_text) {
    json doc = json::parse(json_text, nullptr, false);
    if (doc.is_discarded()) {
        throw ValidationError("corpus: not valid JSON");
    }
    if (!doc.is_array()) {
        throw ValidationError("corpus: top-level value must be an array of scenarios");
    }

    std::vector<RoadScenario> corpus;
    corpus.reserve(doc.size());
    std::unordered_set<std::string> seen_ids;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        RoadScenario s = parse_scenario(doc[i], i);
        if (!seen_ids.insert(s.id).second) {
            throw ValidationError("corpus record " + std::to_string(i) +
                                  ": duplicate id \"" + s.id + "\"");
        }
        corpus.push_back(std::move(s));
    }
    return corpus;
}

std::vector<RoadScenario> load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open corpus file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_corpus(buf.str());
}

std::string corpus_to_json(std::span<const RoadScenario> corpus) {
    json doc = json::array();
    for (const RoadScenario& s : corpus) {
        json segments = json::array();
        for (const RoadSegment& seg : s.segments) {
            segments.push_back({{"kind", to_string(seg.kind)},
                                {"angle_deg", seg.angle_deg},
                                {"pivot_radius", seg.pivot_radius},
                                {"length", seg.length}});
        }
        json obj = {{"id", s.id},
                    {"start", {s.start_point[0], s.start_point[1]}},
                    {"end", {s.end_point[0], s.end_point[1]}},
                    {"cost_s", s.cost_s},
                    {"segments", std::move(segments)}};
        if (s.label) {
            obj["label"] = to_string(*s.label);
        }
        doc.push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

void save_corpus(std::span<const RoadScenario> corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write corpus file: " + path.string());
    }
    out << corpus_to_json(corpus);
}

const char* to_string(SegmentKind kind) {
    switch (kind) {
        case SegmentKind::LeftTurn: return "left";
        case SegmentKind::RightTurn: return "right";
        case SegmentKind::Straight: return "straight";
    }
    return "straight";
}

const char* to_string(Label label) {
    return label == Label::Safe ? "safe" : "unsafe";
}

} // namespace roadprio
