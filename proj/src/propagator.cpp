#include "mwfzp/propagator.hpp"

#include "mwfzp/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace mwfzp {

PacketBuildResult gaussian_packet(const GridSpec& grid, const WavePacketSpec& spec,
                                  double hard_clip_tol) {
    if (!(spec.sigma_x > 0.0) || !(spec.sigma_y > 0.0)) {
        throw std::invalid_argument("gaussian_packet: sigma_x, sigma_y must be positive");
    }

    ComplexField2D psi(grid);
    double peak = 0.0;
    double edge = 0.0;
    for (int i = 0; i < grid.nx; ++i) {
        const double ux = (grid.x(i) - spec.x0) / spec.sigma_x;
        for (int j = 0; j < grid.ny; ++j) {
            const double uy = (grid.y(j) - spec.y0) / spec.sigma_y;
            const double env = std::exp(-0.5 * (ux * ux + uy * uy));
            const double phase = spec.k0 * (grid.x(i) - spec.x0);
            psi.at(i, j) = env * Complex(std::cos(phase), std::sin(phase));
            peak = std::max(peak, env);
            if (i == 0 || i == grid.nx - 1 || j == 0 || j == grid.ny - 1) {
                edge = std::max(edge, env);
            }
        }
    }
    const double edge_ratio = (peak > 0.0) ? edge / peak : 0.0;
    if (edge_ratio > hard_clip_tol) {
        throw config_error("gaussian_packet: packet clipped at the grid edge (amplitude " +
                           std::to_string(edge_ratio) + " of peak)");
    }

    const double n = total_norm(psi);
    const double scale = 1.0 / std::sqrt(n);
    for (Complex& c : psi.v) c *= scale;
    return PacketBuildResult{std::move(psi), edge_ratio};
}

ScalarField2D absorber_mask(const GridSpec& grid, const AbsorberSpec& spec) {
    if (spec.band_cells < 0) throw std::invalid_argument("absorber_mask: negative band");
    if (spec.band_cells >= (std::min(grid.nx, grid.ny) + 1) / 2) {
        throw std::invalid_argument("absorber_mask: band covers half the domain");
    }

    auto ramp = [&](int dist_to_edge, int n) {
        if (spec.band_cells == 0 || dist_to_edge >= spec.band_cells) return 1.0;
        const double s = double(spec.band_cells - dist_to_edge) / spec.band_cells;
        switch (spec.profile) {
            case AbsorberProfile::CosineSquared: {
                const double c = std::cos(0.5 * std::numbers::pi * s);
                return std::pow(c * c, spec.strength);
            }
            case AbsorberProfile::Exponential:
                return std::exp(-8.0 * spec.strength * s * s);
        }
        (void)n;
        return 1.0;
    };

    std::vector<double> mx(grid.nx), my(grid.ny);
    for (int i = 0; i < grid.nx; ++i) mx[i] = ramp(std::min(i, grid.nx - 1 - i), grid.nx);
    for (int j = 0; j < grid.ny; ++j) my[j] = ramp(std::min(j, grid.ny - 1 - j), grid.ny);

    ScalarField2D mask(grid);
    for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.ny; ++j) mask.at(i, j) = mx[i] * my[j];
    }
    return mask;
}

namespace {
// FFTW's planner is not thread safe; executions on distinct buffers are.
std::mutex g_planner_mutex;
}  // namespace

struct SplitStepPropagator::Impl {
    GridSpec grid;
    double dt;
    std::vector<Complex> half_phase;        // exp(-i W dT/2)
    std::vector<Complex> half_phase_abs;    // exp(-i W dT/2) * A
    std::vector<Complex> full_phase_abs;    // exp(-i W dT) * A
    std::vector<Complex> kin_phase;         // exp(-i K^2 dT) / (nx ny)
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    void mul(const std::vector<Complex>& d) {
        auto* b = reinterpret_cast<Complex*>(buf);
        const std::size_t n = grid.size();
        for (std::size_t k = 0; k < n; ++k) b[k] *= d[k];
    }
};

SplitStepPropagator::SplitStepPropagator(const ScalarField2D& w_total,
                                         const ScalarField2D& absorber, double dt)
    : impl_(std::make_unique<Impl>()) {
    require_same_grid(w_total.grid, absorber.grid, "SplitStepPropagator");
    if (!(dt > 0.0)) throw std::invalid_argument("SplitStepPropagator: dT must be positive");

    Impl& im = *impl_;
    im.grid = w_total.grid;
    im.dt = dt;
    const std::size_t n = im.grid.size();

    im.half_phase.resize(n);
    im.half_phase_abs.resize(n);
    im.full_phase_abs.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = w_total.v[k];
        const Complex half = std::polar(1.0, -0.5 * w * dt);
        im.half_phase[k] = half;
        im.half_phase_abs[k] = half * absorber.v[k];
        im.full_phase_abs[k] = half * half * absorber.v[k];
    }

    // Spectral kinetic symbol K^2 = Kx^2 + Ky^2 on FFT frequencies; the
    // inverse-transform normalization 1/(nx ny) is folded in.
    const int nx = im.grid.nx, ny = im.grid.ny;
    const double fx = 2.0 * std::numbers::pi / (nx * im.grid.dx);
    const double fy = 2.0 * std::numbers::pi / (ny * im.grid.dy);
    const double inv_n = 1.0 / (double(nx) * double(ny));
    im.kin_phase.resize(n);
    for (int i = 0; i < nx; ++i) {
        const double kx = fx * (i <= nx / 2 ? i : i - nx);
        for (int j = 0; j < ny; ++j) {
            const double ky = fy * (j <= ny / 2 ? j : j - ny);
            im.kin_phase[im.grid.idx(i, j)] =
                std::polar(inv_n, -(kx * kx + ky * ky) * dt);
        }
    }

    im.buf = fftw_alloc_complex(n);
    {
        std::lock_guard<std::mutex> lock(g_planner_mutex);
        im.fwd = fftw_plan_dft_2d(nx, ny, im.buf, im.buf, FFTW_FORWARD, FFTW_ESTIMATE);
        im.bwd = fftw_plan_dft_2d(nx, ny, im.buf, im.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!im.fwd || !im.bwd) throw std::runtime_error("FFTW planning failed");
}

SplitStepPropagator::~SplitStepPropagator() {
    if (impl_) {
        std::lock_guard<std::mutex> lock(g_planner_mutex);
        if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
        if (impl_->bwd) fftw_destroy_plan(impl_->bwd);
        if (impl_->buf) fftw_free(impl_->buf);
    }
}

double SplitStepPropagator::dt() const { return impl_->dt; }
const GridSpec& SplitStepPropagator::grid() const { return impl_->grid; }

void SplitStepPropagator::step(ComplexField2D& psi) const {
    Impl& im = *impl_;
    require_same_grid(psi.grid, im.grid, "step");
    auto* b = reinterpret_cast<Complex*>(im.buf);
    std::copy(psi.v.begin(), psi.v.end(), b);
    im.mul(im.half_phase);
    fftw_execute(im.fwd);
    im.mul(im.kin_phase);
    fftw_execute(im.bwd);
    im.mul(im.half_phase_abs);
    std::copy(b, b + im.grid.size(), psi.v.begin());
    for (const Complex& c : psi.v) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw numerical_error("step: non-finite wave function values");
        }
    }
}

EvolveRecord SplitStepPropagator::evolve(ComplexField2D& psi, int total_steps, int stride,
                                         const SampleFn& on_sample,
                                         const std::vector<int>& snapshot_steps,
                                         const SnapshotFn& on_snapshot) const {
    Impl& im = *impl_;
    require_same_grid(psi.grid, im.grid, "evolve");
    if (total_steps < 0) throw std::invalid_argument("evolve: negative step count");
    if (stride < 1) throw std::invalid_argument("evolve: stride must be >= 1");

    std::vector<int> snaps = snapshot_steps;
    std::sort(snaps.begin(), snaps.end());
    snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());

    EvolveRecord rec;
    auto* b = reinterpret_cast<Complex*>(im.buf);
    const std::size_t n = im.grid.size();

    auto commit = [&](int step_done) -> bool {
        std::copy(b, b + n, psi.v.begin());
        const double t = step_done * im.dt;
        bool keep_going = true;
        if (step_done % stride == 0 || step_done == total_steps) {
            double norm = total_norm(psi);
            if (!std::isfinite(norm)) {
                throw numerical_error("evolve: non-finite norm at T = " + std::to_string(t));
            }
            rec.sample_time.push_back(t);
            rec.sample_norm.push_back(norm);
            if (on_sample) keep_going = on_sample(step_done, t, psi);
        }
        if (on_snapshot && std::binary_search(snaps.begin(), snaps.end(), step_done)) {
            on_snapshot(step_done, t, psi);
        }
        return keep_going;
    };

    std::copy(psi.v.begin(), psi.v.end(), b);
    if (!commit(0) || total_steps == 0) {
        rec.stopped_early = (total_steps != 0);
        return rec;
    }

    // Between commits the trailing and leading potential half-phases of
    // consecutive steps are merged into one diagonal factor (they commute
    // with the absorber, so the product is the exact step composition).
    int step_done = 0;
    bool open = false;  // a leading half-phase has been applied
    while (step_done < total_steps) {
        int next = std::min((step_done / stride + 1) * stride, total_steps);
        auto it = std::upper_bound(snaps.begin(), snaps.end(), step_done);
        if (it != snaps.end()) next = std::min(next, *it);

        if (!open) {
            im.mul(im.half_phase);
            open = true;
        }
        while (step_done < next) {
            fftw_execute(im.fwd);
            im.mul(im.kin_phase);
            fftw_execute(im.bwd);
            ++step_done;
            if (step_done == next) {
                im.mul(im.half_phase_abs);
                open = false;
            } else {
                im.mul(im.full_phase_abs);
            }
        }
        rec.steps_completed = step_done;
        if (!commit(step_done)) {
            rec.stopped_early = (step_done < total_steps);
            return rec;
        }
    }
    return rec;
}

}  // namespace mwfzp
