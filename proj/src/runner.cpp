#include "mwfzp/runner.hpp"

#include "mwfzp/errors.hpp"
#include "mwfzp/grid_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <thread>

namespace mwfzp {

const double kEfficiencyWindowScale = 1.0;

namespace {

constexpr double kPeakProminence = 0.05;    // fraction of the axial maximum
constexpr double kTcReflectedFraction = 0.01;
constexpr double kTcRightBandContact = 0.002;
constexpr double kEarlyStopInterior = 0.01;
constexpr int kRingSlots = 72;

double scaled_len(double nm, const ScalingFactors& sf) { return nm * 1e-9 / sf.beta; }

}  // namespace

SimulationSetup build_setup(const RunConfig& cfg) {
    SimulationSetup s;
    s.sf = scaling_from_beta(cfg.beta_nm * 1e-9);
    s.lambda_m = cfg.v_mps ? de_broglie_from_velocity(*cfg.v_mps)
                           : de_broglie_from_temperature(*cfg.temp_k);
    s.lambda_scaled = s.lambda_m / s.sf.beta;
    s.k0 = 2.0 * std::numbers::pi / s.lambda_scaled;
    s.v_scaled = 2.0 * s.k0;
    s.v_mps = velocity_from_de_broglie(s.lambda_m);
    s.e_k0 = s.k0 * s.k0;
    s.w_g0 = cfg.w_g0_uev ? (*cfg.w_g0_uev * 1e-6 * kConst.e_charge) / s.sf.v0
                          : cfg.w_g0_over_ek0 * s.e_k0;

    const double half_x = 0.5 * cfg.dx * (cfg.nx - 1);
    const double half_y = 0.5 * cfg.dx * (cfg.ny - 1);
    s.grid = GridSpec::make(cfg.nx, cfg.ny, cfg.dx, -half_x, -half_y);

    const double r1 = scaled_len(cfg.r1_nm, s.sf);
    const int n_zones = cfg.n_zones > 0 ? cfg.n_zones : auto_zone_count(r1, half_y);
    s.plate = ZonePlateSpec::make(r1, s.lambda_scaled, scaled_len(cfg.d_nm, s.sf), s.w_g0,
                                  cfg.x_front, n_zones);
    s.mask = build_opacity_mask(s.grid, s.plate);
    s.chi = (cfg.surface_distance == "axial") ? distance_field_axial(s.mask)
                                              : distance_field(s.mask);

    if (cfg.casimir_enabled) {
        CasimirParams cp{cfg.c3_jm3, cfg.l_nm * 1e-9, cfg.lambda_cut_nm * 1e-9};
        s.w_casimir = casimir_vdw(s.chi, cp, s.sf);
    } else {
        s.w_casimir = ScalarField2D(s.grid);
    }

    if (cfg.bias.biased()) {
        const ElectrodeSet electrodes = make_electrodes(s.mask, cfg.bias);
        SorOptions sor{cfg.sor_omega, cfg.sor_tol, cfg.sor_max_iter};
        s.electro = solve_laplace_sor(electrodes, sor, s.sf.beta);
        PolarizabilityParams pol{cfg.alpha_volume_a0};
        InducedOptions iopt{cfg.image_dipole_term, cfg.lambda_cut_nm * 1e-9};
        s.w_induced = induced_potential(*s.electro, s.chi, s.mask, pol, iopt, s.sf);
    } else {
        s.w_induced = ScalarField2D(s.grid);
    }

    s.w_total = total_potential(geometric_potential(s.mask, s.w_g0), s.w_casimir, s.w_induced);

    s.packet.sigma_x = scaled_len(cfg.sigma_x_nm, s.sf);
    s.packet.sigma_y = scaled_len(cfg.sigma_y_nm, s.sf);
    s.packet.x0 = cfg.x0 ? *cfg.x0 : -0.5 * s.plate.f_cal;
    s.packet.y0 = cfg.y0;
    s.packet.k0 = s.k0;

    s.absorber = AbsorberSpec{cfg.absorber_cells, cfg.absorber_profile, cfg.absorber_strength};

    s.t_max = cfg.t_max > 0.0
                  ? cfg.t_max
                  : (s.grid.x(s.grid.nx - 1) - s.packet.x0 + 150.0) / s.v_scaled;
    s.total_steps = static_cast<int>(std::ceil(s.t_max / cfg.dt));
    return s;
}

namespace {

struct SampleStats {
    double norm = 0.0;
    double reflected = 0.0;    // X < x_front - d
    double transmitted = 0.0;  // X > x_front
    double interior = 0.0;     // outside the absorber band
    double right_band = 0.0;   // inside the downstream absorber band
};

SampleStats compute_stats(const ComplexField2D& psi, double x_refl, double x_trans,
                          int band) {
    const GridSpec& g = psi.grid;
    SampleStats st;
    for (int i = 0; i < g.nx; ++i) {
        const double x = g.x(i);
        const bool in_band_x = (i < band) || (i >= g.nx - band);
        double row_sum = 0.0, row_interior = 0.0;
        const std::size_t base = g.idx(i, 0);
        for (int j = 0; j < g.ny; ++j) {
            const double p = std::norm(psi.v[base + j]);
            row_sum += p;
            const bool in_band = in_band_x || (j < band) || (j >= g.ny - band);
            if (!in_band) row_interior += p;
        }
        st.norm += row_sum;
        if (x < x_refl) st.reflected += row_sum;
        if (x > x_trans) st.transmitted += row_sum;
        if (i >= g.nx - band) st.right_band += row_sum;
        st.interior += row_interior;
    }
    const double a = g.cell_area();
    st.norm *= a;
    st.reflected *= a;
    st.transmitted *= a;
    st.interior *= a;
    st.right_band *= a;
    return st;
}

// Cropped snapshots (X >= x_front) kept on a coarse cadence inside the
// predicted focal arrival window; focal metrics use the snapshot nearest to
// the measured arrival time.
struct SnapshotRing {
    GridSpec crop_grid;
    int i_begin = 0;
    double t_lo = 0.0, t_hi = 0.0;
    int every_samples = 1;
    std::vector<double> times;
    std::vector<std::vector<Complex>> slots;

    void maybe_store(int sample_index, double t, const ComplexField2D& psi) {
        if (t < t_lo || t > t_hi) return;
        if (sample_index % every_samples != 0) return;
        std::vector<Complex> data(crop_grid.size());
        for (int i = 0; i < crop_grid.nx; ++i) {
            const std::size_t src = psi.grid.idx(i_begin + i, 0);
            std::copy_n(psi.v.begin() + src, crop_grid.ny, data.begin() + crop_grid.idx(i, 0));
        }
        times.push_back(t);
        slots.push_back(std::move(data));
    }

    // Index of the stored snapshot nearest to t, or -1.
    int nearest(double t) const {
        if (times.empty()) return -1;
        int best = 0;
        for (int k = 1; k < static_cast<int>(times.size()); ++k) {
            if (std::abs(times[k] - t) < std::abs(times[best] - t)) best = k;
        }
        return best;
    }

    ComplexField2D field(int k) const {
        ComplexField2D f(crop_grid);
        f.v = slots[k];
        return f;
    }
};

void write_artifacts(const std::string& dir, const RunOutput& out) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    write_text_file(dir + "/report.txt", render_report(out.report));
    write_text_file(dir + "/report.json", render_report_json(out));
    write_text_file(dir + "/config_echo.toml", render_config(out.config));
    export_profile(out.axial, dir + "/axial_profile.csv");
    {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t k = 0; k < out.sample_time.size(); ++k) {
            rows.push_back({format_sig9(out.sample_time[k]), format_sig9(out.norm_series[k]),
                            format_sig9(out.trans_series[k])});
        }
        write_csv(dir + "/norm_series.csv", {"T", "norm", "P_x_gt_0"}, rows);
    }
    for (const FocalMetrics& f : out.report.focal) {
        if (f.transverse_profile.empty()) continue;
        std::vector<std::vector<std::string>> rows;
        for (const auto& [y, dens] : f.transverse_profile) {
            rows.push_back({format_sig9(y), format_sig9(dens)});
        }
        write_csv(dir + "/focus_profile_F" + std::to_string(f.order) + ".csv",
                  {"y", "density"}, rows);
    }
}

}  // namespace

const FocalMetrics* DiagnosticsReport::focus(int order) const {
    for (const FocalMetrics& f : focal) {
        if (f.order == order) return &f;
    }
    return nullptr;
}

double DiagnosticsReport::eta(int order) const {
    const FocalMetrics* f = focus(order);
    return f ? f->eta : 0.0;
}

RunOutput run_single(const RunConfig& cfg, const std::optional<std::string>& out_dir) {
    try {
        SimulationSetup s = build_setup(cfg);
        RunOutput out;
        out.config = cfg;
        DiagnosticsReport& rep = out.report;
        rep.warnings = cfg.warnings;
        rep.lambda_db_nm = s.lambda_m * 1e9;
        rep.f_cal = s.plate.f_cal;
        rep.k0 = s.k0;
        rep.e_k0 = s.e_k0;
        rep.w_g0 = s.w_g0;

        if (out_dir && cfg.emit_fields) {
            std::filesystem::create_directories(*out_dir);
            export_field(s.w_total, *out_dir + "/w_total.mwfzp");
            export_field(s.chi, *out_dir + "/chi.mwfzp");
            if (s.electro) {
                export_field(s.electro->potential, *out_dir + "/potential_volts.mwfzp");
                export_field(s.w_induced, *out_dir + "/w_induced.mwfzp");
            }
        }

        PacketBuildResult packet = gaussian_packet(s.grid, s.packet, cfg.packet_clip_tol);
        rep.initial_edge_ratio = packet.edge_ratio;
        if (packet.edge_ratio > 1e-8) {
            rep.warnings.push_back("initial packet amplitude at the grid edge is " +
                                   format_sig9(packet.edge_ratio) + " of the peak");
        }

        const ScalarField2D absorber = absorber_mask(s.grid, s.absorber);
        SplitStepPropagator prop(s.w_total, absorber, cfg.dt);

        const double x_back = s.plate.x_front + s.plate.d;
        const double x_refl_plane = s.plate.x_front - s.plate.d;
        const int j0 = s.grid.axis_row();
        const double sample_dt = cfg.dt * cfg.sample_stride;

        // Focal arrival window for the snapshot ring.
        SnapshotRing ring;
        {
            ring.i_begin = 0;
            while (ring.i_begin < s.grid.nx && s.grid.x(ring.i_begin) < s.plate.x_front) {
                ++ring.i_begin;
            }
            ring.crop_grid = s.grid;
            ring.crop_grid.nx = s.grid.nx - ring.i_begin;
            ring.crop_grid.x0 = s.grid.x(ring.i_begin);
            auto arrive = [&](double x) { return (x - s.packet.x0) / s.v_scaled; };
            ring.t_lo = arrive(std::max(x_back + 2.0 * s.grid.dx, 0.08 * s.plate.f_cal));
            const double x_far = std::min(3.0 * s.plate.f_cal, s.grid.x(s.grid.nx - 1));
            ring.t_hi = std::min(arrive(x_far), s.t_max);
            const double span = std::max(ring.t_hi - ring.t_lo, sample_dt);
            ring.every_samples =
                std::max(1, static_cast<int>(std::ceil(span / (sample_dt * (kRingSlots - 1)))));
        }

        std::vector<std::vector<double>> axial_rows;  // |psi(X, 0)|^2 per sample
        axial_rows.reserve(static_cast<std::size_t>(s.total_steps / cfg.sample_stride) + 2);

        auto on_sample = [&](int step, double t, const ComplexField2D& psi) -> bool {
            SampleStats st = compute_stats(psi, x_refl_plane, s.plate.x_front,
                                           cfg.absorber_cells);
            out.sample_time.push_back(t);
            out.norm_series.push_back(st.norm);
            out.trans_series.push_back(st.transmitted);

            std::vector<double> row(s.grid.nx);
            for (int i = 0; i < s.grid.nx; ++i) row[i] = std::norm(psi.at(i, j0));
            axial_rows.push_back(std::move(row));

            const int sample_index = static_cast<int>(out.sample_time.size()) - 1;
            ring.maybe_store(sample_index, t, psi);

            // Transmission is read off once the reflected part is gone, or at
            // the last moment before the transmitted lobe reaches the
            // downstream absorber, whichever comes first.
            const bool tc_due =
                cfg.tc_measure_t > 0.0
                    ? t >= cfg.tc_measure_t
                    : ((st.norm > 0.0 &&
                        st.reflected / st.norm < kTcReflectedFraction) ||
                       st.right_band > kTcRightBandContact);
            if (!rep.tc_measured && tc_due) {
                rep.tc = st.transmitted;
                rep.t_measure = t;
                rep.tc_measured = true;
            }
            const bool drained = rep.tc_measured && st.interior < kEarlyStopInterior;
            (void)step;
            return !drained;
        };

        // User-requested snapshots at the nearest step.
        std::vector<int> snapshot_steps;
        for (double t : cfg.snapshot_times) {
            int st = static_cast<int>(std::lround(t / cfg.dt));
            if (st < 0 || st > s.total_steps) {
                rep.warnings.push_back("snapshot time " + format_sig9(t) +
                                       " outside the run; skipped");
                continue;
            }
            snapshot_steps.push_back(st);
        }
        SnapshotFn on_snapshot = nullptr;
        if (!snapshot_steps.empty() && out_dir) {
            std::filesystem::create_directories(*out_dir);
            on_snapshot = [&](int step, double t, const ComplexField2D& psi) {
                (void)step;
                char name[64];
                std::snprintf(name, sizeof name, "/snapshot_T%.6g.mwfzp", t);
                export_field(psi, *out_dir + name);
            };
        }

        ComplexField2D psi = std::move(packet.psi);
        EvolveRecord rec = prop.evolve(psi, s.total_steps, cfg.sample_stride, on_sample,
                                       snapshot_steps, on_snapshot);
        rep.steps_run = rec.steps_completed;
        rep.t_end = rec.steps_completed * cfg.dt;
        rep.norm_final = rec.sample_norm.empty() ? 0.0 : rec.sample_norm.back();

        if (!rep.tc_measured) {
            rep.tc = out.trans_series.empty() ? 0.0 : out.trans_series.back();
            rep.t_measure = rep.t_end;
            rep.warnings.push_back(
                "no Tc trigger fired (reflected remnant or absorber contact); "
                "Tc taken at T_end");
        }

        // Time-integrated axial intensity and focal structure.
        out.axial = make_axial_profile(s.grid, sample_dt);
        for (const auto& row : axial_rows) {
            for (int i = 0; i < s.grid.nx; ++i) out.axial.intensity[i] += row[i] * sample_dt;
        }
        // Search beyond the surface-interaction skin and short of the band;
        // the shoulder next to the band accumulates dwell weight from slow
        // components awaiting absorption, so it is excluded by half a band.
        const double x_lo = x_back + 3.0 * s.grid.dx;
        const double x_hi =
            s.grid.x(std::max(0, s.grid.nx - 1 - cfg.absorber_cells - cfg.absorber_cells / 2));
        std::vector<FocalPoint> peaks =
            find_focal_points(out.axial, kPeakProminence, x_lo, x_hi);

        const double ring_cadence = sample_dt * ring.every_samples;
        for (const FocalPoint& pk : peaks) {
            FocalMetrics fm;
            fm.order = pk.order;
            fm.position = pk.position;
            fm.f_over_fcal = pk.position / s.plate.f_cal;
            fm.peak_axial_intensity = pk.peak_intensity;

            const int i_cell = std::clamp(
                static_cast<int>(std::lround((pk.position - s.grid.x0) / s.grid.dx)), 0,
                s.grid.nx - 1);
            int best = 0;
            for (int t = 1; t < static_cast<int>(axial_rows.size()); ++t) {
                if (axial_rows[t][i_cell] > axial_rows[best][i_cell]) best = t;
            }
            fm.arrival_t = out.sample_time[best];

            const int k = ring.nearest(fm.arrival_t);
            if (k >= 0 && std::abs(ring.times[k] - fm.arrival_t) <= 2.0 * ring_cadence) {
                const ComplexField2D snap = ring.field(k);
                fm.snapshot_t = ring.times[k];
                const SpotMetrics spot = spot_fwhm(snap, pk.position, x_back);
                fm.fwhm_y = spot.fwhm_y;
                fm.fwhm_x = spot.fwhm_x;
                fm.peak_density = spot.peak_density;
                fm.off_axis = spot.off_axis;
                fm.clipped = spot.clipped;
                fm.eta = efficiency(snap, spot, kEfficiencyWindowScale);
                for (double scale : {1.0, 1.5, 2.0, 2.5, 3.0}) {
                    fm.eta_scales.emplace_back(scale, efficiency(snap, spot, scale));
                }
                fm.transverse_profile.reserve(snap.grid.ny);
                for (int j = 0; j < snap.grid.ny; ++j) {
                    fm.transverse_profile.emplace_back(
                        snap.grid.y(j), std::norm(snap.at(spot.i_peak, j)));
                }
                fm.have_spot = true;
                if (spot.off_axis) {
                    rep.warnings.push_back("focal peak of order " + std::to_string(fm.order) +
                                           " is more than two cells off axis");
                }
            } else {
                rep.warnings.push_back("no snapshot near the arrival of order " +
                                       std::to_string(fm.order) + "; spot metrics skipped");
            }
            rep.focal.push_back(fm);
        }

        if (const FocalMetrics* f1 = rep.focus(1); f1 && f1->have_spot) {
            rep.sigma_f1 = f1->fwhm_y;
            rep.sigma_f1_over_sigma_y = f1->fwhm_y / s.packet.sigma_y;
        }

        if (out_dir) write_artifacts(*out_dir, out);
        return out;
    } catch (const std::exception& e) {
        if (out_dir) {
            std::error_code ec;
            std::filesystem::create_directories(*out_dir, ec);
            if (!ec) write_text_file(*out_dir + "/FAILED", std::string(e.what()) + "\n");
        }
        throw;
    }
}

RunOutput run_single_refined(const RunConfig& cfg, const std::optional<std::string>& out_dir,
                             int max_halvings) {
    RunConfig c = cfg;
    RunOutput prev = run_single(c);
    for (int k = 0; k < max_halvings; ++k) {
        c.dt *= 0.5;
        RunOutput finer = run_single(c, k + 1 == max_halvings ? out_dir : std::nullopt);
        const double ref = std::max(std::abs(prev.report.tc), 1e-12);
        const double change = std::abs(finer.report.tc - prev.report.tc) / ref;
        finer.report.warnings.push_back("dT refinement " + format_sig9(c.dt) + ": Tc change " +
                                        format_sig9(change));
        if (change < 0.01) {
            if (out_dir && k + 1 != max_halvings) write_artifacts(*out_dir, finer);
            return finer;
        }
        prev = std::move(finer);
    }
    return prev;
}

namespace {

std::vector<std::pair<double, std::optional<double>>> sweep_points(const SweepSpec& sw) {
    std::vector<std::pair<double, std::optional<double>>> pts;
    if (!sw.k_e_values.empty()) {
        for (double v1 : sw.values) {
            for (double ke : sw.k_e_values) pts.emplace_back(v1, ke);
        }
    } else {
        for (double v : sw.values) pts.emplace_back(v, std::nullopt);
    }
    return pts;
}

RunConfig point_config(const RunConfig& base, const SweepSpec& sw, double p1,
                       const std::optional<double>& p2) {
    RunConfig c = base;
    c.sweep.reset();
    if (sw.parameter == "V1") c.bias.v1 = p1;
    else if (sw.parameter == "k_E") c.bias.k_e = p1;
    else {  // T_a
        c.temp_k = p1;
        c.v_mps.reset();
    }
    if (p2) c.bias.k_e = *p2;
    return c;
}

}  // namespace

SweepResult run_sweep(const RunConfig& cfg, int threads,
                      const std::optional<std::string>& out_dir) {
    if (!cfg.sweep) throw config_error("run_sweep: configuration has no [sweep] section");
    const SweepSpec& sw = *cfg.sweep;
    const auto pts = sweep_points(sw);

    SweepResult result;
    result.points.resize(pts.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= pts.size()) return;
            SweepPoint& p = result.points[k];
            p.p1 = pts[k].first;
            p.p2 = pts[k].second;
            try {
                RunConfig pc = point_config(cfg, sw, p.p1, p.p2);
                validate_config(pc);
                RunOutput out = run_single(pc);
                p.report = std::move(out.report);
                p.lambda_db_nm = p.report.lambda_db_nm;
            } catch (const std::exception& e) {
                std::string msg = e.what();
                std::replace(msg.begin(), msg.end(), ',', ';');
                std::replace(msg.begin(), msg.end(), '\n', ' ');
                p.error = msg;
            }
        }
    };
    const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(pts.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    const bool two_d = !sw.k_e_values.empty();
    result.header.clear();
    if (two_d) result.header = {"V1", "k_E"};
    else if (sw.parameter == "T_a") result.header = {"T_a_K", "lambda_dB_nm"};
    else result.header = {sw.parameter};
    for (const char* c : {"Tc", "f1_over_fcal", "sigma_F1_over_sigma_y", "eta1", "eta2",
                          "eta3", "error"}) {
        result.header.push_back(c);
    }

    std::vector<std::vector<std::string>> rows;
    for (const SweepPoint& p : result.points) {
        std::vector<std::string> row;
        row.push_back(format_sig9(p.p1));
        if (two_d) row.push_back(format_sig9(*p.p2));
        else if (sw.parameter == "T_a") row.push_back(format_sig9(p.lambda_db_nm));
        const DiagnosticsReport& r = p.report;
        const FocalMetrics* f1 = r.focus(1);
        row.push_back(format_sig9(r.tc));
        row.push_back(format_sig9(f1 ? f1->f_over_fcal : 0.0));
        row.push_back(format_sig9(r.sigma_f1_over_sigma_y));
        row.push_back(format_sig9(r.eta(1)));
        row.push_back(format_sig9(r.eta(2)));
        row.push_back(format_sig9(r.eta(3)));
        row.push_back(p.error);
        rows.push_back(std::move(row));
    }

    std::ostringstream csv;
    for (std::size_t c = 0; c < result.header.size(); ++c) {
        csv << result.header[c] << (c + 1 < result.header.size() ? "," : "");
    }
    csv << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            csv << row[c] << (c + 1 < row.size() ? "," : "");
        }
        csv << '\n';
    }
    result.csv_text = csv.str();

    if (out_dir) {
        std::filesystem::create_directories(*out_dir);
        write_text_file(*out_dir + "/sweep.csv", result.csv_text);
        write_text_file(*out_dir + "/sweep_config.toml", render_config(cfg));
    }
    return result;
}

std::string render_report(const DiagnosticsReport& r) {
    std::ostringstream o;
    o << "Tc = " << format_sig9(r.tc) << "\n";
    o << "Tc_measured = " << (r.tc_measured ? "true" : "false") << "\n";
    o << "T_measure = " << format_sig9(r.t_measure) << "\n";
    o << "lambda_dB_nm = " << format_sig9(r.lambda_db_nm) << "\n";
    o << "f_cal_scaled = " << format_sig9(r.f_cal) << "\n";
    o << "K0 = " << format_sig9(r.k0) << "\n";
    o << "E_k0_scaled = " << format_sig9(r.e_k0) << "\n";
    o << "W_g0_scaled = " << format_sig9(r.w_g0) << "\n";
    o << "n_focal_points = " << r.focal.size() << "\n";
    for (const FocalMetrics& f : r.focal) {
        const std::string p = "focal_" + std::to_string(f.order) + "_";
        o << p << "position = " << format_sig9(f.position) << "\n";
        o << p << "f_over_fcal = " << format_sig9(f.f_over_fcal) << "\n";
        o << p << "arrival_T = " << format_sig9(f.arrival_t) << "\n";
        o << p << "axial_intensity = " << format_sig9(f.peak_axial_intensity) << "\n";
        if (f.have_spot) {
            o << p << "fwhm_y = " << format_sig9(f.fwhm_y) << "\n";
            o << p << "fwhm_x = " << format_sig9(f.fwhm_x) << "\n";
            o << p << "eta = " << format_sig9(f.eta) << "\n";
            o << p << "peak_density = " << format_sig9(f.peak_density) << "\n";
        }
    }
    o << "sigma_F1 = " << format_sig9(r.sigma_f1) << "\n";
    o << "sigma_F1_over_sigma_y = " << format_sig9(r.sigma_f1_over_sigma_y) << "\n";
    o << "norm_final = " << format_sig9(r.norm_final) << "\n";
    o << "initial_edge_ratio = " << format_sig9(r.initial_edge_ratio) << "\n";
    o << "T_end = " << format_sig9(r.t_end) << "\n";
    o << "steps_run = " << r.steps_run << "\n";
    for (const std::string& w : r.warnings) o << "warning = " << w << "\n";
    return o.str();
}

std::string render_report_json(const RunOutput& out) {
    nlohmann::json j;
    const DiagnosticsReport& r = out.report;
    j["Tc"] = r.tc;
    j["Tc_measured"] = r.tc_measured;
    j["T_measure"] = r.t_measure;
    j["lambda_dB_nm"] = r.lambda_db_nm;
    j["f_cal_scaled"] = r.f_cal;
    j["K0"] = r.k0;
    j["E_k0_scaled"] = r.e_k0;
    j["W_g0_scaled"] = r.w_g0;
    j["sigma_F1"] = r.sigma_f1;
    j["sigma_F1_over_sigma_y"] = r.sigma_f1_over_sigma_y;
    j["norm_final"] = r.norm_final;
    j["initial_edge_ratio"] = r.initial_edge_ratio;
    j["T_end"] = r.t_end;
    j["steps_run"] = r.steps_run;
    j["warnings"] = r.warnings;
    nlohmann::json focal = nlohmann::json::array();
    for (const FocalMetrics& f : r.focal) {
        nlohmann::json e;
        e["order"] = f.order;
        e["position"] = f.position;
        e["f_over_fcal"] = f.f_over_fcal;
        e["arrival_T"] = f.arrival_t;
        e["axial_intensity"] = f.peak_axial_intensity;
        e["have_spot"] = f.have_spot;
        if (f.have_spot) {
            e["fwhm_y"] = f.fwhm_y;
            e["fwhm_x"] = f.fwhm_x;
            e["eta"] = f.eta;
            e["peak_density"] = f.peak_density;
            e["snapshot_T"] = f.snapshot_t;
            nlohmann::json scales = nlohmann::json::array();
            for (const auto& [sc, eta] : f.eta_scales) {
                scales.push_back({{"scale", sc}, {"eta", eta}});
            }
            e["eta_window_scales"] = scales;
        }
        focal.push_back(e);
    }
    j["focal_points"] = focal;
    return j.dump(2) + "\n";
}

}  // namespace mwfzp
