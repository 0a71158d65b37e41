// cflab: correlation-filter update strategy laboratory.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical-consistency error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "cflab/bench.hpp"
#include "cflab/curve_table.hpp"
#include "cflab/errors.hpp"
#include "cflab/sim.hpp"

namespace {

namespace fs = std::filesystem;
using namespace cflab;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct TrackerFlags {
    double eta = 0.025;
    double lambda = 1e-4;
    std::string kernel = "gaussian";
    double kernel_sigma = 0.5;
    double poly_a = 1.5;
    int poly_b = 7;
    double padding = 1.5;
    double output_sigma_factor = 0.1;
    bool mosse_plus_eta = false;

    void attach(CLI::App* app) {
        app->add_option("--eta", eta, "Learning rate in (0, 1]")->capture_default_str();
        app->add_option("--lambda", lambda, "Ridge regularization")->capture_default_str();
        app->add_option("--kernel", kernel, "gaussian|polynomial|linear")->capture_default_str();
        app->add_option("--kernel-sigma", kernel_sigma, "Gaussian kernel bandwidth")->capture_default_str();
        app->add_option("--poly-a", poly_a, "Polynomial kernel additive term")->capture_default_str();
        app->add_option("--poly-b", poly_b, "Polynomial kernel exponent")->capture_default_str();
        app->add_option("--padding", padding, "Search window padding")->capture_default_str();
        app->add_option("--output-sigma-factor", output_sigma_factor, "Label width factor")
            ->capture_default_str();
        app->add_flag("--mosse-plus-eta", mosse_plus_eta, "Use the (1+eta) weight in the fractional update");
    }

    TrackerConfig config(Strategy strategy) const {
        TrackerConfig cfg;
        cfg.eta = eta;
        cfg.lambda = lambda;
        switch (parse_kernel_kind(kernel)) {
            case KernelKind::gaussian: cfg.kernel = KernelSpec::gaussian(kernel_sigma); break;
            case KernelKind::polynomial: cfg.kernel = KernelSpec::polynomial(poly_a, poly_b); break;
            case KernelKind::linear: cfg.kernel = KernelSpec::linear(); break;
        }
        cfg.padding = padding;
        cfg.output_sigma_factor = output_sigma_factor;
        cfg.strategy = strategy;
        cfg.mosse_plus_eta = mosse_plus_eta;
        cfg.validate();
        return cfg;
    }
};

int run_track(const fs::path& sequence_dir, const std::string& strategy_id, const TrackerFlags& flags,
              const fs::path& out, const fs::path& report, const std::string& dump_dir) {
    const TrackerConfig cfg = flags.config(parse_strategy(strategy_id));
    const Sequence seq = load_sequence(sequence_dir);

    FrameObserver observer;
    if (!dump_dir.empty()) {
        observer = [&](std::size_t frame, const TrackerState& state) {
            dump_filter_images({FilterSnapshot{frame, cfg.strategy, model_image(state)}}, dump_dir);
        };
    }
    const TrackingRun run = run_tracking(seq, cfg, observer);
    write_file_atomic(out, boxes_csv(run));
    write_file_atomic(report, report_csv(run.report));

    std::cout << seq.name << " [" << strategy_id << "] frames=" << run.boxes.size()
              << " precision@20=" << format_real(run.report.precision_at_20)
              << " success_auc=" << format_real(run.report.success_auc)
              << " mean_psr=" << format_real(run.report.mean_psr) << "\n";
    return kOk;
}

int run_compare(const fs::path& sequence_dir, const std::string& strategies, const TrackerFlags& flags,
                const fs::path& out) {
    std::vector<TrackerConfig> cfgs;
    for (Strategy s : parse_strategy_list(strategies)) cfgs.push_back(flags.config(s));
    const Sequence seq = load_sequence(sequence_dir);
    compare_strategies(seq, cfgs).save_csv(out);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cflab - correlation filter model-update laboratory"};
    app.require_subcommand(1);

    // track
    auto* track = app.add_subcommand("track", "Track one sequence with one update strategy");
    std::string track_seq;
    std::string track_strategy;
    std::string track_out = "boxes.csv";
    std::string track_report = "report.csv";
    std::string track_dump;
    TrackerFlags track_flags;
    track->add_option("--sequence", track_seq, "OTB-layout sequence directory")->required();
    track->add_option("--strategy", track_strategy, "Update strategy identifier")->required();
    track_flags.attach(track);
    track->add_option("--out", track_out, "Per-frame boxes CSV")->capture_default_str();
    track->add_option("--report", track_report, "Metrics summary CSV")->capture_default_str();
    track->add_option("--dump-filters", track_dump, "Directory for per-frame PGM filter images");

    // compare
    auto* compare = app.add_subcommand("compare", "Run several strategies on one sequence");
    std::string compare_seq;
    std::string compare_strategies_arg = "spatial,frequency,dual,feature-first,mosse-fractional,asef-direct";
    std::string compare_out;
    TrackerFlags compare_flags;
    compare->add_option("--sequence", compare_seq, "OTB-layout sequence directory")->required();
    compare->add_option("--strategies", compare_strategies_arg, "Comma-separated strategy identifiers")
        ->capture_default_str();
    compare_flags.attach(compare);
    compare->add_option("--out", compare_out, "Comparison CSV")->required();

    // sim
    auto* sim = app.add_subcommand("sim", "Scalar update-rule simulations");
    sim->require_subcommand(1);

    auto* sim_kernel = sim->add_subcommand("kernel", "Feature-first vs coefficient interpolation");
    KernelSimConfig kcfg;
    std::string sim_kernel_kind;
    double sim_sigma = 60.0;
    double sim_poly_a = 1.5;
    int sim_poly_b = 7;
    std::string sim_grid = "-300:300:0.5";
    std::string sim_kernel_out;
    sim_kernel->add_option("--kernel", sim_kernel_kind, "gaussian|polynomial")->required();
    sim_kernel->add_option("--x-init", kcfg.x_init)->capture_default_str();
    sim_kernel->add_option("--eta", kcfg.eta)->capture_default_str();
    sim_kernel->add_option("--sigma", sim_sigma)->capture_default_str();
    sim_kernel->add_option("--poly-a", sim_poly_a)->capture_default_str();
    sim_kernel->add_option("--poly-b", sim_poly_b)->capture_default_str();
    sim_kernel->add_option("--y", kcfg.y)->capture_default_str();
    sim_kernel->add_option("--lambda", kcfg.lambda)->capture_default_str();
    sim_kernel->add_option("--grid", sim_grid, "x_curr range min:max:step")->capture_default_str();
    sim_kernel->add_option("--out", sim_kernel_out, "Output CSV")->required();

    auto* sim_frac = sim->add_subcommand("fractional", "Fractional vs direct ratio updates");
    FractionalSimConfig fcfg;
    std::string sim_bgrid = "1:3:0.01";
    std::string sim_frac_out;
    sim_frac->add_option("--a-prev", fcfg.a_prev)->capture_default_str();
    sim_frac->add_option("--b-prev", fcfg.b_prev)->capture_default_str();
    sim_frac->add_option("--a-new", fcfg.a_new)->capture_default_str();
    sim_frac->add_option("--b-new", sim_bgrid, "B_new range min:max:step")->capture_default_str();
    sim_frac->add_option("--eta", fcfg.eta)->capture_default_str();
    sim_frac->add_flag("--plus-eta", fcfg.plus_eta_variant, "Use the (1+eta) weight on previous terms");
    sim_frac->add_option("--out", sim_frac_out, "Output CSV")->required();

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic OTB-layout sequence");
    SynthOptions sopts;
    std::string synth_motion = "translate";
    std::string synth_format = "pgm";
    std::string synth_out;
    synth->add_option("--motion", synth_motion, "translate|static")->capture_default_str();
    synth->add_option("--step-px", sopts.step_px, "Pixels per frame along each axis")->capture_default_str();
    synth->add_option("--frames", sopts.frames)->capture_default_str();
    synth->add_option("--format", synth_format, "pgm|png")->capture_default_str();
    synth->add_option("--seed", sopts.seed)->capture_default_str();
    synth->add_option("--out", synth_out, "Output sequence directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (track->parsed()) {
            return run_track(track_seq, track_strategy, track_flags, track_out, track_report, track_dump);
        }
        if (compare->parsed()) {
            return run_compare(compare_seq, compare_strategies_arg, compare_flags, compare_out);
        }
        if (sim_kernel->parsed()) {
            switch (parse_kernel_kind(sim_kernel_kind)) {
                case KernelKind::gaussian: kcfg.kernel = KernelSpec::gaussian(sim_sigma); break;
                case KernelKind::polynomial: kcfg.kernel = KernelSpec::polynomial(sim_poly_a, sim_poly_b); break;
                case KernelKind::linear: throw InvalidInputError("sim kernel supports gaussian|polynomial");
            }
            kcfg.x_curr_grid = GridRange::parse(sim_grid);
            std::size_t clamped = 0;
            simulate_kernel_update(kcfg, &clamped).save_csv(sim_kernel_out);
            if (clamped > 0) std::cerr << "warning: " << clamped << " kernel values clamped to the double range\n";
            return kOk;
        }
        if (sim_frac->parsed()) {
            fcfg.b_new_grid = GridRange::parse(sim_bgrid);
            simulate_fractional(fcfg).save_csv(sim_frac_out);
            return kOk;
        }
        if (synth->parsed()) {
            if (synth_motion == "translate") {
                sopts.motion = SynthMotion::translate;
            } else if (synth_motion == "static") {
                sopts.motion = SynthMotion::static_scene;
            } else {
                throw InvalidInputError("unknown motion '" + synth_motion + "' (expected translate|static)");
            }
            if (synth_format == "pgm") {
                sopts.format = FrameFormat::pgm;
            } else if (synth_format == "png") {
                sopts.format = FrameFormat::png;
            } else {
                throw InvalidInputError("unknown format '" + synth_format + "' (expected pgm|png)");
            }
            write_synthetic_sequence(synth_out, sopts);
            return kOk;
        }
    } catch (const InvalidInputError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kNumerical;
    } catch (const DimensionError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    }
    return kUsage;
}
