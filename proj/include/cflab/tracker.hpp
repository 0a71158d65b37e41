#pragma once

#include <cstddef>

#include "cflab/grid.hpp"
#include "cflab/kernel.hpp"
#include "cflab/update.hpp"

namespace cflab {

/// Axis-aligned box, top-left corner plus size, 0-based pixel units.
struct BoundingBox {
    double x = 0.0;
    double y = 0.0;
    double w = 1.0;
    double h = 1.0;

    double center_x() const { return x + 0.5 * w; }
    double center_y() const { return y + 0.5 * h; }
    bool valid() const;

    bool operator==(const BoundingBox&) const = default;
};

struct TrackerConfig {
    double eta = 0.025;
    double lambda = 1e-4;
    // Gaussian sigma and polynomial parameters are applied to features
    // normalized by 1/sqrt(cell count), so sigma is independent of window size.
    KernelSpec kernel = KernelSpec::gaussian(0.5);
    double padding = 1.5;
    double output_sigma_factor = 0.1;
    Strategy strategy = Strategy::dual;
    bool mosse_plus_eta = false;

    void validate() const;
};

struct TrackerState {
    TrackerConfig config;
    FilterModel model;
    RealGrid window;    // Hann taper, fixes the model size
    Spectrum label_hat; // fft2 of the regression target
    BoundingBox current_box;
    std::size_t frame_index = 0;

    // Derived from `model` after every update:
    Spectrum filter;          // detection filter: alpha_hat or the realized ratio filter
    RealGrid kernel_template; // normalized model features fed to the kernel (kernel strategies)
    double init_psr = 0.0;    // PSR of the training frame's self-response
};

struct StepResult {
    BoundingBox box;
    double psr = 0.0;
    ChangeRate change;  // |filter_after - filter_before|
};

/// Model grid size for a box: padded extent rounded to even cell counts.
std::pair<std::size_t, std::size_t> model_size_for(const BoundingBox& box, const TrackerConfig& config);

/// Crops the padded search window around `box` (replicating border pixels),
/// resamples it bilinearly onto the window's grid, maps intensities to
/// value/255 - 0.5 and applies the taper.
RealGrid extract_features(const RealGrid& frame, const BoundingBox& box, const TrackerConfig& config,
                          const RealGrid& window);

TrackerState init_tracker(const RealGrid& frame, const BoundingBox& box, const TrackerConfig& config);

/// Detect in `frame`, move the box to the response peak, then update the
/// model at the new location with the configured strategy.
StepResult track_step(TrackerState& state, const RealGrid& frame);

/// Correlation response of the current model against a feature grid.
RealGrid response_map(const TrackerState& state, const RealGrid& features);

/// Spatial-domain view of the model used for filter dumps: the feature
/// template for kernel strategies and the realized ratio filter otherwise.
RealGrid model_image(const TrackerState& state);

/// Peak-to-sidelobe ratio, excluding an 11x11 (wrapped) window around the
/// peak. Zero when the sidelobe is flat or empty.
double peak_to_sidelobe(const RealGrid& response);

/// Index of the first maximum in row-major order.
std::pair<std::size_t, std::size_t> argmax(const RealGrid& g);

}  // namespace cflab
