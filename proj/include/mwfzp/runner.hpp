// End-to-end orchestration: geometry -> potentials -> (optional) SOR solve ->
// packet -> split-step evolution with observers -> diagnostics -> artifacts.
#pragma once

#include "mwfzp/casimir.hpp"
#include "mwfzp/config.hpp"
#include "mwfzp/diagnostics.hpp"
#include "mwfzp/electrostatics.hpp"
#include "mwfzp/geometry.hpp"
#include "mwfzp/propagator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mwfzp {

/// Everything derived from a RunConfig before time evolution starts.
struct SimulationSetup {
    ScalingFactors sf{};
    double lambda_m = 0.0;      // de Broglie wavelength, meters
    double lambda_scaled = 0.0;
    double k0 = 0.0;            // scaled wavenumber
    double v_scaled = 0.0;      // group velocity 2*k0, scaled
    double v_mps = 0.0;         // h/(m lambda)
    double e_k0 = 0.0;          // scaled incident kinetic energy, k0^2
    double w_g0 = 0.0;          // scaled barrier height
    GridSpec grid;
    ZonePlateSpec plate;
    OpacityMask mask;
    ScalarField2D chi;
    ScalarField2D w_casimir;
    ScalarField2D w_induced;
    ScalarField2D w_total;
    std::optional<ElectrostaticSolution> electro;
    WavePacketSpec packet;
    AbsorberSpec absorber;
    double t_max = 0.0;
    int total_steps = 0;
};

SimulationSetup build_setup(const RunConfig& cfg);

struct FocalMetrics {
    int order = 0;
    double position = 0.0;      // scaled
    double f_over_fcal = 0.0;
    double arrival_t = -1.0;
    double peak_axial_intensity = 0.0;
    double snapshot_t = -1.0;
    double fwhm_y = 0.0;
    double fwhm_x = 0.0;
    double eta = 0.0;
    double peak_density = 0.0;
    std::vector<std::pair<double, double>> eta_scales;  // (window scale, eta)
    std::vector<std::pair<double, double>> transverse_profile;  // (Y, |psi|^2) at the focus
    bool have_spot = false;
    bool off_axis = false;
    bool clipped = false;
};

struct DiagnosticsReport {
    double tc = 0.0;
    double t_measure = -1.0;
    bool tc_measured = false;
    std::vector<FocalMetrics> focal;
    double sigma_f1 = 0.0;               // scaled FWHM at F1
    double sigma_f1_over_sigma_y = 0.0;
    double lambda_db_nm = 0.0;
    double f_cal = 0.0;                  // scaled
    double k0 = 0.0;
    double e_k0 = 0.0;
    double w_g0 = 0.0;
    double norm_final = 0.0;
    double initial_edge_ratio = 0.0;
    double t_end = 0.0;
    int steps_run = 0;
    std::vector<std::string> warnings;

    const FocalMetrics* focus(int order) const;
    double eta(int order) const;
};

struct RunOutput {
    DiagnosticsReport report;
    AxialProfile axial;
    std::vector<double> sample_time;
    std::vector<double> norm_series;
    std::vector<double> trans_series;  // probability at X > x_front per sample
    RunConfig config;
};

/// One full simulation. When out_dir is given, writes report.txt/.json,
/// axial_profile.csv, norm_series.csv, any requested snapshots, and a FAILED
/// marker (then rethrows) if the run aborts partway.
RunOutput run_single(const RunConfig& cfg,
                     const std::optional<std::string>& out_dir = std::nullopt);

/// Halves dT until the transmission changes by less than 1 % and returns the
/// finest run (at most max_halvings refinements).
RunOutput run_single_refined(const RunConfig& cfg,
                             const std::optional<std::string>& out_dir = std::nullopt,
                             int max_halvings = 4);

struct SweepPoint {
    double p1 = 0.0;                 // primary parameter value
    std::optional<double> p2;        // k_E for 2D grids
    double lambda_db_nm = 0.0;
    DiagnosticsReport report;
    std::string error;
};

struct SweepResult {
    std::vector<std::string> header;
    std::vector<SweepPoint> points;
    std::string csv_text;
};

/// Share-nothing parallel sweep; rows appear in sweep order regardless of
/// completion order. Per-point failures are recorded in the error column and
/// the sweep continues. Writes <out_dir>/sweep.csv when out_dir is given.
SweepResult run_sweep(const RunConfig& cfg, int threads,
                      const std::optional<std::string>& out_dir = std::nullopt);

/// The frozen efficiency window: probability is integrated over
/// +-kEfficiencyWindowScale * FWHM around the focal peak along each axis
/// (calibrated once against the thin-plate benchmark).
extern const double kEfficiencyWindowScale;

std::string render_report(const DiagnosticsReport& r);
std::string render_report_json(const RunOutput& out);

}  // namespace mwfzp
