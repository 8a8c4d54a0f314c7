// Run configuration: TOML-style key-value parsing with Table-I defaults,
// validation, and the named presets used by the CLI and the test suites.
#pragma once

#include "mwfzp/electrostatics.hpp"
#include "mwfzp/propagator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mwfzp {

struct SweepSpec {
    std::string parameter;            // "V1" | "k_E" | "T_a"
    std::vector<double> values;
    std::vector<double> k_e_values;   // second axis of a V1 x k_E grid
};

struct RunConfig {
    // physical
    std::optional<double> v_mps = 2.0;
    std::optional<double> temp_k;
    double c3_jm3 = 2.5e-50;
    double l_nm = 9.3;
    double lambda_cut_nm = 10.0;
    double alpha_volume_a0 = 1.383746;
    bool casimir_enabled = true;
    bool image_dipole_term = true;
    // Distance convention for the surface-interaction field outside the slab:
    // "axial" measures along X to the nearer face (no transverse structure),
    // "euclidean" measures to the nearest opaque point.
    std::string surface_distance = "axial";

    // geometry
    double r1_nm = 200.0;
    double d_nm = 50.0;
    double w_g0_over_ek0 = 30.0;
    std::optional<double> w_g0_uev;   // explicit barrier height override
    int n_zones = 0;                  // 0 = fill the domain
    double x_front = 0.0;             // scaled

    // grid
    int nx = 701;
    int ny = 701;
    double dx = 1.0;
    double beta_nm = 5.0;

    // packet
    double sigma_x_nm = 50.0;
    double sigma_y_nm = 600.0;
    std::optional<double> x0;         // scaled; default -f_cal/2
    double y0 = 0.0;                  // scaled
    double packet_clip_tol = 0.02;

    // bias
    BiasScheme bias;

    // solver
    double dt = 0.05;
    double t_max = 0.0;               // scaled; 0 = auto
    double tc_measure_t = 0.0;        // fixed Tc measurement time; 0 = auto rule
    int absorber_cells = 50;
    AbsorberProfile absorber_profile = AbsorberProfile::CosineSquared;
    double absorber_strength = 1.0;
    double sor_omega = 1.9;
    double sor_tol = 1e-8;
    int sor_max_iter = 200000;
    int sample_stride = 5;
    bool refine_dt = false;

    // output
    std::string out_dir = "out";
    std::vector<double> snapshot_times;
    bool emit_fields = false;

    std::optional<SweepSpec> sweep;

    std::vector<std::string> warnings;  // filled by validate()
};

/// Parse + validate a config file; unknown keys are rejected.
RunConfig parse_config(const std::string& path);

/// Parse + validate config text (same grammar as the file form).
RunConfig parse_config_text(const std::string& text);

/// Consistency checks and range warnings; throws config_error on conflicts.
void validate_config(RunConfig& cfg);

/// Canonical flat key = value rendering of the effective configuration.
std::string render_config(const RunConfig& cfg);

/// Named presets: benchmark-thin, baseline-50nm, uniform-sweep, sqrtn-sweep,
/// sin-grid, temperature-sweep.
RunConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace mwfzp
