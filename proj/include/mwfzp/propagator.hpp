// Initial Gaussian wave packet, absorbing boundary mask and second-order
// split-step Fourier evolution of the nondimensional TDSE
//   i dpsi/dT = (-laplacian + W) psi.
#pragma once

#include "mwfzp/grid.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace mwfzp {

struct WavePacketSpec {
    double sigma_x = 10.0;  // scaled widths of the amplitude envelope
    double sigma_y = 120.0;
    double x0 = 0.0;
    double y0 = 0.0;
    double k0 = 0.0;        // scaled wavenumber along +X
};

struct PacketBuildResult {
    ComplexField2D psi;
    double edge_ratio = 0.0;  // max envelope amplitude on the grid edge / peak
};

/// Discretized Gaussian packet, normalized so sum |psi|^2 dx dy = 1.
/// Throws config_error when the envelope at the grid edge exceeds
/// hard_clip_tol of the peak; smaller leakage is reported via edge_ratio.
PacketBuildResult gaussian_packet(const GridSpec& grid, const WavePacketSpec& spec,
                                  double hard_clip_tol = 0.02);

enum class AbsorberProfile { CosineSquared, Exponential };

struct AbsorberSpec {
    int band_cells = 50;
    AbsorberProfile profile = AbsorberProfile::CosineSquared;
    double strength = 1.0;
};

/// Separable amplitude mask: 1 in the interior, smooth decay to ~0 at the
/// outermost cell across the border band.
ScalarField2D absorber_mask(const GridSpec& grid, const AbsorberSpec& spec);

struct EvolveRecord {
    std::vector<double> sample_time;
    std::vector<double> sample_norm;
    int steps_completed = 0;
    bool stopped_early = false;
};

/// Called at every sample commit; return false to stop the evolution.
using SampleFn = std::function<bool(int step, double t, const ComplexField2D& psi)>;
using SnapshotFn = std::function<void(int step, double t, const ComplexField2D& psi)>;

class SplitStepPropagator {
  public:
    /// Precomputes the diagonal phase factors for a static potential and the
    /// absorber, and plans the transforms (deterministic FFTW_ESTIMATE plans).
    SplitStepPropagator(const ScalarField2D& w_total, const ScalarField2D& absorber,
                        double dt);
    ~SplitStepPropagator();
    SplitStepPropagator(const SplitStepPropagator&) = delete;
    SplitStepPropagator& operator=(const SplitStepPropagator&) = delete;

    /// One Strang step: half potential phase, full kinetic phase in spectral
    /// space, half potential phase, then the absorber mask.
    void step(ComplexField2D& psi) const;

    /// Repeated stepping with observer commits every `stride` steps (the
    /// initial state is sample 0) and exact-step snapshots. Norms are
    /// recorded at every sample; non-finite norms raise numerical_error.
    EvolveRecord evolve(ComplexField2D& psi, int total_steps, int stride,
                        const SampleFn& on_sample,
                        const std::vector<int>& snapshot_steps = {},
                        const SnapshotFn& on_snapshot = nullptr) const;

    double dt() const;
    const GridSpec& grid() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace mwfzp
