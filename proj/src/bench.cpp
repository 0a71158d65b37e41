#include "cflab/bench.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <random>
#include <sstream>

#include "cflab/image_io.hpp"

namespace cflab {

namespace fs = std::filesystem;

double center_error(const BoundingBox& a, const BoundingBox& b) {
    return std::hypot(a.center_x() - b.center_x(), a.center_y() - b.center_y());
}

double intersection_over_union(const BoundingBox& a, const BoundingBox& b) {
    const double iw = std::max(0.0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
    const double ih = std::max(0.0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
    const double inter = iw * ih;
    const double uni = a.w * a.h + b.w * b.h - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

MetricsReport compute_metrics(const std::vector<BoundingBox>& boxes,
                              const std::vector<std::optional<BoundingBox>>& ground_truth,
                              const std::vector<double>& psr) {
    MetricsReport report;
    const std::size_t n = std::min(boxes.size(), ground_truth.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (!ground_truth[k]) continue;
        report.evaluated_frames.push_back(k + 1);
        report.center_error.push_back(center_error(boxes[k], *ground_truth[k]));
        report.overlap.push_back(intersection_over_union(boxes[k], *ground_truth[k]));
    }
    const auto count = static_cast<double>(report.center_error.size());
    if (count > 0) {
        const auto within = std::count_if(report.center_error.begin(), report.center_error.end(),
                                          [](double e) { return e <= 20.0; });
        report.precision_at_20 = static_cast<double>(within) / count;

        double auc = 0.0;
        for (int t = 0; t <= 20; ++t) {
            const double threshold = 0.05 * t;
            const auto ok = std::count_if(report.overlap.begin(), report.overlap.end(),
                                          [threshold](double o) { return o > threshold; });
            auc += static_cast<double>(ok) / count;
        }
        report.success_auc = auc / 21.0;
    }
    if (!psr.empty()) {
        double acc = 0.0;
        for (double p : psr) acc += p;
        report.mean_psr = acc / static_cast<double>(psr.size());
    }
    return report;
}

TrackingRun run_tracking(const Sequence& seq, const TrackerConfig& cfg, const FrameObserver& observer) {
    if (seq.frame_paths.empty()) throw DataError("sequence '" + seq.name + "' has no frames");
    if (seq.ground_truth.empty() || !seq.ground_truth.front()) {
        throw DataError("sequence '" + seq.name + "' has no valid first ground truth box");
    }

    TrackingRun run;
    TrackerState state = init_tracker(read_image(seq.frame_paths.front()), *seq.ground_truth.front(), cfg);
    run.boxes.push_back(state.current_box);
    run.psr.push_back(state.init_psr);
    run.change.push_back({});
    if (observer) observer(1, state);

    for (std::size_t k = 1; k < seq.frame_paths.size(); ++k) {
        const StepResult step = track_step(state, read_image(seq.frame_paths[k]));
        run.boxes.push_back(step.box);
        run.psr.push_back(step.psr);
        run.change.push_back(step.change);
        if (observer) observer(k + 1, state);
    }
    run.report = compute_metrics(run.boxes, seq.ground_truth, run.psr);
    return run;
}

CurveTable compare_strategies(const Sequence& seq, const std::vector<TrackerConfig>& cfgs) {
    if (cfgs.empty()) throw InvalidInputError("compare_strategies: no configurations");
    for (const auto& cfg : cfgs) {
        if (cfg.padding != cfgs.front().padding) {
            throw InvalidInputError("compare_strategies: all configurations must share the padding");
        }
    }

    std::vector<std::future<TrackingRun>> pending;
    pending.reserve(cfgs.size());
    for (const auto& cfg : cfgs) {
        pending.push_back(std::async(std::launch::async, [&seq, cfg] { return run_tracking(seq, cfg); }));
    }
    std::vector<TrackingRun> runs;
    for (auto& f : pending) runs.push_back(f.get());

    std::vector<std::string> names;
    for (const auto& cfg : cfgs) {
        const std::string id = to_string(cfg.strategy);
        names.push_back(id + "_center_error");
        names.push_back(id + "_change_rate");
        names.push_back(id + "_psr");
    }
    CurveTable table("frame", names);

    for (std::size_t k = 0; k < seq.frame_paths.size(); ++k) {
        std::vector<double> row;
        for (const auto& run : runs) {
            const bool has_gt = k < seq.ground_truth.size() && seq.ground_truth[k].has_value();
            row.push_back(has_gt ? center_error(run.boxes[k], *seq.ground_truth[k]) : NAN);
            row.push_back(run.change[k].mean);
            row.push_back(run.psr[k]);
        }
        table.add_row(static_cast<double>(k + 1), std::move(row));
    }
    return table;
}

std::string boxes_csv(const TrackingRun& run) {
    std::string out = "frame,x,y,w,h,psr\n";
    for (std::size_t k = 0; k < run.boxes.size(); ++k) {
        const auto& b = run.boxes[k];
        out += std::to_string(k + 1) + "," + format_real(b.x + 1.0) + "," + format_real(b.y + 1.0) + "," +
               format_real(b.w) + "," + format_real(b.h) + "," + format_real(run.psr[k]) + "\n";
    }
    return out;
}

std::string report_csv(const MetricsReport& report) {
    const auto mean = [](const std::vector<double>& v) {
        if (v.empty()) return 0.0;
        double acc = 0.0;
        for (double x : v) acc += x;
        return acc / static_cast<double>(v.size());
    };
    std::string out = "metric,value\n";
    out += "frames_evaluated," + std::to_string(report.center_error.size()) + "\n";
    out += "precision_at_20," + format_real(report.precision_at_20) + "\n";
    out += "success_auc," + format_real(report.success_auc) + "\n";
    out += "mean_center_error," + format_real(mean(report.center_error)) + "\n";
    out += "mean_overlap," + format_real(mean(report.overlap)) + "\n";
    out += "mean_psr," + format_real(report.mean_psr) + "\n";
    return out;
}

fs::path filter_image_name(std::size_t frame, Strategy strategy) {
    std::ostringstream name;
    name << "frame_" << std::setw(5) << std::setfill('0') << frame << "_" << to_string(strategy) << ".pgm";
    return name.str();
}

std::vector<fs::path> dump_filter_images(const std::vector<FilterSnapshot>& snapshots, const fs::path& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw DataError("cannot create '" + out_dir.string() + "': " + ec.message());
    std::vector<fs::path> written;
    for (const auto& snap : snapshots) {
        const fs::path path = out_dir / filter_image_name(snap.frame, snap.strategy);
        write_pgm(path, to_display_image(snap.image));
        written.push_back(path);
    }
    return written;
}

void write_synthetic_sequence(const fs::path& dir, const SynthOptions& opts) {
    if (opts.frames == 0) throw InvalidInputError("synthetic sequence needs at least one frame");
    if (opts.patch_size == 0 || opts.patch_size >= opts.image_size) {
        throw InvalidInputError("synthetic patch must be smaller than the frame");
    }
    const double travel = opts.motion == SynthMotion::translate
                              ? opts.step_px * static_cast<double>(opts.frames - 1)
                              : 0.0;
    const double last = opts.start + travel;
    if (opts.start < 0.0 || last < 0.0 ||
        last + static_cast<double>(opts.patch_size) > static_cast<double>(opts.image_size)) {
        throw InvalidInputError("synthetic motion leaves the frame");
    }

    std::mt19937 rng(opts.seed);
    std::uniform_real_distribution<double> bg_noise(-10.0, 10.0);
    std::uniform_real_distribution<double> block_value(30.0, 225.0);

    RealGrid background(opts.image_size, opts.image_size);
    for (double& v : background) v = 128.0 + bg_noise(rng);

    // 8x8 blocks of random intensity.
    constexpr std::size_t block = 8;
    const std::size_t blocks = (opts.patch_size + block - 1) / block;
    std::vector<double> levels(blocks * blocks);
    for (double& v : levels) v = block_value(rng);
    RealGrid patch(opts.patch_size, opts.patch_size);
    for (std::size_t i = 0; i < opts.patch_size; ++i) {
        for (std::size_t j = 0; j < opts.patch_size; ++j) {
            patch(i, j) = levels[(i / block) * blocks + j / block];
        }
    }

    fs::create_directories(dir / "img");
    std::vector<BoundingBox> truth;
    for (std::size_t k = 0; k < opts.frames; ++k) {
        const double offset = opts.motion == SynthMotion::translate ? opts.step_px * static_cast<double>(k) : 0.0;
        const auto top = static_cast<std::size_t>(std::lround(opts.start + offset));
        RealGrid frame = background;
        for (std::size_t i = 0; i < opts.patch_size; ++i) {
            for (std::size_t j = 0; j < opts.patch_size; ++j) frame(top + i, top + j) = patch(i, j);
        }
        truth.push_back(BoundingBox{static_cast<double>(top), static_cast<double>(top),
                                    static_cast<double>(opts.patch_size), static_cast<double>(opts.patch_size)});

        std::ostringstream name;
        name << std::setw(4) << std::setfill('0') << (k + 1)
             << (opts.format == FrameFormat::png ? ".png" : ".pgm");
        const fs::path path = dir / "img" / name.str();
        if (opts.format == FrameFormat::png) {
            write_png(path, quantize(frame));
        } else {
            write_pgm(path, quantize(frame));
        }
    }
    write_file_atomic(dir / "groundtruth_rect.txt", format_ground_truth(truth));
}

}  // namespace cflab
