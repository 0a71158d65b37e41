#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cflab/curve_table.hpp"
#include "cflab/sequence.hpp"
#include "cflab/tracker.hpp"

namespace cflab {

struct MetricsReport {
    std::vector<std::size_t> evaluated_frames;  // 1-based frames with ground truth
    std::vector<double> center_error;           // pixels
    std::vector<double> overlap;                // intersection over union
    double precision_at_20 = 0.0;
    double success_auc = 0.0;  // mean success rate over IoU thresholds 0, 0.05, ..., 1
    double mean_psr = 0.0;
};

double center_error(const BoundingBox& a, const BoundingBox& b);
double intersection_over_union(const BoundingBox& a, const BoundingBox& b);

MetricsReport compute_metrics(const std::vector<BoundingBox>& boxes,
                              const std::vector<std::optional<BoundingBox>>& ground_truth,
                              const std::vector<double>& psr);

struct TrackingRun {
    std::vector<BoundingBox> boxes;   // one per frame, 0-based
    std::vector<double> psr;          // frame 1 holds the training self-response PSR
    std::vector<ChangeRate> change;   // frame 1 is zero
    MetricsReport report;
};

/// Called after init (frame 1) and after every track step with the 1-based
/// frame number and the updated state.
using FrameObserver = std::function<void(std::size_t frame, const TrackerState& state)>;

TrackingRun run_tracking(const Sequence& seq, const TrackerConfig& cfg, const FrameObserver& observer = {});

/// Per-frame `<id>_center_error`, `<id>_change_rate`, `<id>_psr` columns for
/// each config, keyed by 1-based frame. Strategy runs execute concurrently.
CurveTable compare_strategies(const Sequence& seq, const std::vector<TrackerConfig>& cfgs);

/// `frame,x,y,w,h,psr` with 1-based frame numbers and coordinates.
std::string boxes_csv(const TrackingRun& run);

/// `metric,value` summary rows.
std::string report_csv(const MetricsReport& report);

struct FilterSnapshot {
    std::size_t frame = 0;  // 1-based
    Strategy strategy = Strategy::dual;
    RealGrid image;
};

/// Min-max normalized binary PGMs named `frame_{frame:05}_{strategy}.pgm`.
std::vector<std::filesystem::path> dump_filter_images(const std::vector<FilterSnapshot>& snapshots,
                                                      const std::filesystem::path& out_dir);

std::filesystem::path filter_image_name(std::size_t frame, Strategy strategy);

enum class SynthMotion { translate, static_scene };
enum class FrameFormat { pgm, png };

struct SynthOptions {
    SynthMotion motion = SynthMotion::translate;
    double step_px = 2.0;       // per frame, along both axes
    std::size_t frames = 50;
    std::size_t image_size = 256;
    std::size_t patch_size = 64;
    double start = 40.0;        // top-left of the patch in frame 1, 0-based
    FrameFormat format = FrameFormat::pgm;
    std::uint32_t seed = 7;
};

/// Writes a textured patch moving over a static low-contrast background in
/// OTB layout, with exact ground truth.
void write_synthetic_sequence(const std::filesystem::path& dir, const SynthOptions& opts);

}  // namespace cflab
