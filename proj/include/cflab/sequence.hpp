#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cflab/tracker.hpp"

namespace cflab {

/// OTB-layout sequence: `img/` with numbered frames plus `groundtruth_rect.txt`.
/// Ground-truth boxes are stored 0-based; a row with non-positive size (target
/// absent) is kept as nullopt so indices stay aligned with frames.
struct Sequence {
    std::string name;
    std::vector<std::filesystem::path> frame_paths;
    std::vector<std::optional<BoundingBox>> ground_truth;
};

/// Parses `x,y,w,h` rows (comma, tab or space separated), converting the
/// 1-based file coordinates to 0-based. Errors name the offending line.
std::vector<std::optional<BoundingBox>> parse_ground_truth(const std::string& text);

Sequence load_sequence(const std::filesystem::path& dir);

/// Boxes in 1-based file coordinates, one `x,y,w,h` row per box.
std::string format_ground_truth(const std::vector<BoundingBox>& boxes);

}  // namespace cflab
