#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "roadprio/common.hpp"

namespace roadprio {

enum class SegmentKind { LeftTurn, RightTurn, Straight };

/// One piece of the driving path. Turns carry the angle swept and the
/// pivot radius of the arc; straights have both fixed at zero.
struct RoadSegment {
    SegmentKind kind = SegmentKind::Straight;
    double angle_deg = 0.0;
    double pivot_radius = 0.0;
    double length = 0.0;

    bool is_turn() const { return kind != SegmentKind::Straight; }
};

enum class Label { Safe, Unsafe };

/// A driving test case: the ordered segments of the path the ego car
/// follows, its endpoints, the estimated execution cost in seconds and,
/// for evaluation corpora, the ground-truth safe/unsafe label.
/// Prioritizers never read the label.
struct RoadScenario {
    std::string id;
    std::vector<RoadSegment> segments;
    std::array<double, 2> start_point{0.0, 0.0};
    std::array<double, 2> end_point{0.0, 0.0};
    double cost_s = 0.0;
    std::optional<Label> label;
};

/// Checks the type invariants; throws ValidationError with `context`
/// (e.g. "corpus record 3") prefixed to the message.
void validate_scenario(const RoadScenario& scenario, const std::string& context);

/// Parses a corpus from JSON text: an array of scenario objects. Unknown
/// fields are ignored; a missing or ill-typed required field raises
/// ValidationError naming the field and the record index. `label` may be
/// omitted for corpora that are only prioritized, never evaluated.
std::vector<RoadScenario> parse_corpus(std::string_view json_text);

std::vector<RoadScenario> load_corpus(const std::filesystem::path& path);

/// Serializes the corpus back to the same JSON schema.
std::string corpus_to_json(std::span<const RoadScenario> corpus);

void save_corpus(std::span<const RoadScenario> corpus, const std::filesystem::path& path);

const char* to_string(SegmentKind kind);
const char* to_string(Label label);

} // namespace roadprio
