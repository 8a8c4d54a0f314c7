// Physical constants and the nondimensional unit system used everywhere
// downstream: lengths in units of beta, times in units of tau = 2*m*beta^2/hbar,
// energies in units of V0 = hbar^2/(2*m*beta^2).
#pragma once

#include <cmath>
#include <numbers>

namespace mwfzp {

/// CODATA 2018 values. hbar is derived from h so that h == 2*pi*hbar holds
/// exactly in floating point.
struct PhysicalConstants {
    double h = 6.62607015e-34;                      // J s (exact)
    double hbar = 6.62607015e-34 / (2.0 * std::numbers::pi);
    double m_he = 6.6464731e-27;                    // kg, 4He atomic mass
    double k_b = 1.380649e-23;                      // J/K (exact)
    double eps0 = 8.8541878128e-12;                 // C^2/(J m)
    double a0 = 5.29177210903e-11;                  // m, Bohr radius
    double e_charge = 1.602176634e-19;              // C (exact)
};

inline constexpr PhysicalConstants kConst{};

/// Length/time/energy scales of the dimensionless Schrodinger equation.
struct ScalingFactors {
    double beta;  // m
    double tau;   // s
    double v0;    // J

    double to_scaled_length(double meters) const { return meters / beta; }
    double to_scaled_energy(double joules) const { return joules / v0; }
    double to_si_length(double scaled) const { return scaled * beta; }
    double to_si_time(double scaled) const { return scaled * tau; }
    double to_si_energy(double scaled) const { return scaled * v0; }
};

ScalingFactors scaling_from_beta(double beta_m);

/// lambda = h / (m v)
double de_broglie_from_velocity(double v_mps);

/// lambda = h / sqrt(3 m k_B T_a)
double de_broglie_from_temperature(double temp_k);

/// Inverse of de_broglie_from_temperature.
double temperature_from_de_broglie(double lambda_m);

/// Velocity giving the same wavelength through lambda = h/(m v).
inline double velocity_from_de_broglie(double lambda_m) {
    return kConst.h / (kConst.m_he * lambda_m);
}

}  // namespace mwfzp
