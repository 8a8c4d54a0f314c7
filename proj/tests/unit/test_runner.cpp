#include "mwfzp/runner.hpp"

#include "mwfzp/errors.hpp"
#include "mwfzp/grid_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace mwfzp;

namespace {

// Reduced geometry that exercises the full pipeline in seconds: a 9-zone
// plate with r1 = 12 cells, so the packet actually straddles several zones.
RunConfig tiny_config() {
    RunConfig c;
    c.nx = c.ny = 128;
    c.r1_nm = 60.0;        // 12 cells
    c.d_nm = 20.0;         // 4 cells
    c.n_zones = 9;
    c.sigma_x_nm = 25.0;   // 5 cells
    c.sigma_y_nm = 100.0;  // 20 cells
    c.x0 = -25.0;
    c.absorber_cells = 20;
    c.t_max = 120.0;
    c.tc_measure_t = 35.0;  // cramped domain: fixed measurement time
    validate_config(c);
    return c;
}

}  // namespace

TEST_CASE("setup derives the reference scaled quantities") {
    RunConfig c;
    validate_config(c);
    const SimulationSetup s = build_setup(c);
    CHECK(s.lambda_m == doctest::Approx(49.8465e-9).epsilon(1e-4));
    CHECK(s.k0 == doctest::Approx(0.630253244851088).epsilon(1e-12));
    CHECK(s.e_k0 == doctest::Approx(0.39721915264532554).epsilon(1e-12));
    CHECK(s.w_g0 == doctest::Approx(11.916574579359764).epsilon(1e-12));
    CHECK(s.plate.f_cal == doctest::Approx(160.49267090841167).epsilon(1e-12));
    CHECK(s.plate.n_zones == 76);
    CHECK(s.packet.x0 == doctest::Approx(-80.2463354542).epsilon(1e-9));
    CHECK(s.packet.sigma_x == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(s.packet.sigma_y == doctest::Approx(120.0).epsilon(1e-12));
    CHECK(s.grid.x(0) == -350.0);
    CHECK(s.grid.x(s.grid.nx - 1) == 350.0);

    // explicit barrier override in micro-eV
    RunConfig c2;
    c2.w_g0_uev = 24390.0;  // the quoted 24.39 meV
    validate_config(c2);
    const SimulationSetup s2 = build_setup(c2);
    CHECK(s2.w_g0 == doctest::Approx(24.39e-3 * 1.602176634e-19 /
                                     3.346501826881743e-26)
                         .epsilon(1e-9));
}

TEST_CASE("tiny end-to-end run produces a sane report") {
    const RunConfig c = tiny_config();
    const RunOutput out = run_single(c);
    const DiagnosticsReport& r = out.report;

    CHECK(r.tc_measured);
    CHECK(r.tc > 0.0);
    CHECK(r.tc < 1.0);
    CHECK(r.norm_final <= 1.0 + 1e-9);
    CHECK(r.initial_edge_ratio < 0.02);
    REQUIRE(!r.focal.empty());
    CHECK(r.focal[0].order == 1);
    for (const FocalMetrics& f : r.focal) {
        CHECK(f.position > 2.0);  // beyond the slab
        if (f.have_spot) {
            CHECK(f.eta >= 0.0);
            CHECK(f.eta <= r.tc + 1e-9);  // eta_j <= Tc
        }
    }

    // Transmitted probability is non-increasing once the packet has cleared
    // the slab and the absorber is the only sink.
    const auto& tr = out.trans_series;
    const std::size_t peak =
        std::max_element(tr.begin(), tr.end()) - tr.begin();
    for (std::size_t k = peak; k + 1 < tr.size(); ++k) {
        CHECK(tr[k + 1] <= tr[k] + 1e-6);
    }

    // Norm series starts at one and never grows.
    CHECK(out.norm_series.front() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t k = 0; k + 1 < out.norm_series.size(); ++k) {
        CHECK(out.norm_series[k + 1] <= out.norm_series[k] + 1e-9);
    }
}

TEST_CASE("identical configs give identical reports and profiles") {
    const RunConfig c = tiny_config();
    const RunOutput a = run_single(c);
    const RunOutput b = run_single(c);
    CHECK(render_report(a.report) == render_report(b.report));
    REQUIRE(a.axial.intensity.size() == b.axial.intensity.size());
    for (std::size_t k = 0; k < a.axial.intensity.size(); ++k) {
        CHECK(a.axial.intensity[k] == b.axial.intensity[k]);
    }
}

TEST_CASE("a one-point sweep equals the single run") {
    RunConfig base = tiny_config();
    base.bias.variant = BiasVariant::Uniform;
    base.sweep = SweepSpec{"V1", {3.0}, {}};
    validate_config(base);
    const SweepResult sw = run_sweep(base, 1);
    REQUIRE(sw.points.size() == 1);
    REQUIRE(sw.points[0].error.empty());

    RunConfig single = base;
    single.sweep.reset();
    single.bias.v1 = 3.0;
    validate_config(single);
    const RunOutput out = run_single(single);
    CHECK(sw.points[0].report.tc == out.report.tc);
    CHECK(sw.points[0].report.sigma_f1 == out.report.sigma_f1);
    CHECK(sw.points[0].report.eta(1) == out.report.eta(1));
}

TEST_CASE("sweep records per-point failures and continues") {
    RunConfig base = tiny_config();
    base.bias.variant = BiasVariant::Uniform;
    base.sor_max_iter = 3;  // V1 > 0 cannot converge in three sweeps
    base.sweep = SweepSpec{"V1", {0.0, 5.0}, {}};
    validate_config(base);
    const SweepResult sw = run_sweep(base, 2);
    REQUIRE(sw.points.size() == 2);
    CHECK(sw.points[0].error.empty());        // unbiased point runs
    CHECK(!sw.points[1].error.empty());       // SOR failure captured
    CHECK(sw.points[0].report.tc > 0.0);
    CHECK(sw.csv_text.find("SOR") != std::string::npos);

    // header layout
    REQUIRE(!sw.header.empty());
    CHECK(sw.header.front() == "V1");
    CHECK(sw.header.back() == "error");
}

TEST_CASE("artifacts, snapshots and the failure marker") {
    namespace fs = std::filesystem;
    const std::string dir = (fs::temp_directory_path() / "mwfzp_runner_test").string();
    fs::remove_all(dir);

    RunConfig c = tiny_config();
    c.snapshot_times = {5.0};
    c.emit_fields = true;
    const RunOutput out = run_single(c, dir);
    CHECK(fs::exists(dir + "/report.txt"));
    CHECK(fs::exists(dir + "/report.json"));
    CHECK(fs::exists(dir + "/axial_profile.csv"));
    CHECK(fs::exists(dir + "/norm_series.csv"));
    CHECK(fs::exists(dir + "/config_echo.toml"));
    CHECK(fs::exists(dir + "/w_total.mwfzp"));
    CHECK(fs::exists(dir + "/snapshot_T5.mwfzp"));
    const ComplexField2D snap = import_complex_field(dir + "/snapshot_T5.mwfzp");
    CHECK(snap.grid.nx == c.nx);
    CHECK(total_norm(out.report.focal.empty() ? snap : snap) > 0.0);

    // axial CSV row count = nx + header
    std::ifstream in(dir + "/axial_profile.csv");
    int lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == c.nx + 1);

    // a failing run leaves a FAILED marker and rethrows
    const std::string fail_dir = dir + "_fail";
    fs::remove_all(fail_dir);
    RunConfig bad = tiny_config();
    bad.bias.variant = BiasVariant::Uniform;
    bad.bias.v1 = 5.0;
    bad.sor_max_iter = 2;
    CHECK_THROWS_AS(run_single(bad, fail_dir), convergence_error);
    CHECK(fs::exists(fail_dir + "/FAILED"));
}

TEST_CASE("dT refinement loop settles") {
    RunConfig c = tiny_config();
    c.nx = c.ny = 96;
    c.sigma_y_nm = 60.0;
    c.t_max = 70.0;
    c.x0 = -20.0;
    validate_config(c);
    const RunOutput out = run_single_refined(c, std::nullopt, 1);
    CHECK(out.config.dt <= c.dt);
    CHECK(out.report.tc > 0.0);
}
