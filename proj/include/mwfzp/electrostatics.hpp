// Electrode biasing schemes, Laplace solve by successive over-relaxation,
// field extraction and the induced polarization potential.
#pragma once

#include "mwfzp/constants.hpp"
#include "mwfzp/geometry.hpp"
#include "mwfzp/grid.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace mwfzp {

enum class BiasVariant { Unbiased, Uniform, SqrtN, Sinusoidal };

struct BiasScheme {
    BiasVariant variant = BiasVariant::Unbiased;
    double v1 = 0.0;   // volts, applied to the central zone
    double k_e = 0.0;  // radial modulation factor (Sinusoidal only)

    /// Voltage of zone n per the scheme formula.
    double voltage(int n) const;
    bool biased() const { return variant != BiasVariant::Unbiased && v1 != 0.0; }
};

/// Voltages of the opaque (odd-index) zones, as (n, V_n) pairs.
std::vector<std::pair<int, double>> bias_voltages(const BiasScheme& scheme, int n_zones);

struct PolarizabilityParams {
    double alpha_volume_a0 = 1.383746;  // polarizability volume in units of a0^3

    double alpha_volume() const {
        return alpha_volume_a0 * kConst.a0 * kConst.a0 * kConst.a0;  // m^3
    }
    double alpha_si() const {  // C m^2 / V
        return 4.0 * std::numbers::pi * kConst.eps0 * alpha_volume();
    }
};

/// Dirichlet data: electrode cells carry fixed voltages; the outer boundary
/// is grounded unless covered by an electrode.
struct ElectrodeSet {
    GridSpec grid;
    std::vector<std::uint8_t> fixed;   // 1 where the potential is prescribed
    std::vector<double> voltage;       // volts (meaningful where fixed)
};

/// Every opaque cell of zone n becomes a Dirichlet node at V_n; the substrate
/// beyond the outermost zone is grounded.
ElectrodeSet make_electrodes(const OpacityMask& mask, const BiasScheme& scheme);

struct ElectrostaticSolution {
    ScalarField2D potential;  // volts
    ScalarField2D field_x;    // V/m
    ScalarField2D field_y;    // V/m
    double residual = 0.0;    // final max update / voltage scale
    int iterations = 0;
};

struct SorOptions {
    double omega = 1.9;
    double tol = 1e-8;
    int max_iter = 200000;
};

/// Red-black SOR for Laplace's equation with the given Dirichlet set.
/// Converges when the max-norm update relative to the voltage scale drops
/// below tol; falls back once to omega = 1.5 if the iteration diverges.
ElectrostaticSolution solve_laplace_sor(const ElectrodeSet& electrodes,
                                        const SorOptions& opt, double beta_m);

/// E = -grad V in V/m: central differences inside, one-sided on boundaries.
void electric_field(const ScalarField2D& potential, double beta_m,
                    ScalarField2D& ex, ScalarField2D& ey);

struct InducedOptions {
    bool include_image_term = true;
    double lambda_cut_m = 1e-8;  // clamp for the 1/chi^3 image factor
};

/// Eq. of the induced polarization energy, scaled: Stark term plus the
/// image-dipole cross term. The surface normal is Y inside the slab
/// channels and X outside the slab faces.
ScalarField2D induced_potential(const ElectrostaticSolution& sol,
                                const ScalarField2D& chi, const OpacityMask& mask,
                                const PolarizabilityParams& pol,
                                const InducedOptions& opt, const ScalingFactors& sf);

/// Predicted in-channel induced potential for the SqrtN scheme (joules):
/// -alpha V1^2 / (2 lambda f_cal).
double analytic_induced_sqrt(double v1, double lambda_m, double f_cal_m,
                             const PolarizabilityParams& pol);

/// Predicted in-channel induced potential for the Sinusoidal scheme (joules):
/// -2 alpha V1^2 k_E^2 n cos^2(k_E n) / (lambda f_cal).
double analytic_induced_sin(double v1, double k_e, double n, double lambda_m,
                            double f_cal_m, const PolarizabilityParams& pol);

}  // namespace mwfzp
