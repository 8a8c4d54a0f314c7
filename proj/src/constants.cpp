#include "mwfzp/constants.hpp"

#include <stdexcept>

namespace mwfzp {

ScalingFactors scaling_from_beta(double beta_m) {
    if (!(beta_m > 0.0)) {
        throw std::invalid_argument("scaling_from_beta: beta must be positive");
    }
    const double v0 = kConst.hbar * kConst.hbar / (2.0 * kConst.m_he * beta_m * beta_m);
    const double tau = 2.0 * kConst.m_he * beta_m * beta_m / kConst.hbar;
    return ScalingFactors{beta_m, tau, v0};
}

double de_broglie_from_velocity(double v_mps) {
    if (!(v_mps > 0.0)) {
        throw std::invalid_argument("de_broglie_from_velocity: v must be positive");
    }
    return kConst.h / (kConst.m_he * v_mps);
}

double de_broglie_from_temperature(double temp_k) {
    if (!(temp_k > 0.0)) {
        throw std::invalid_argument("de_broglie_from_temperature: T_a must be positive");
    }
    return kConst.h / std::sqrt(3.0 * kConst.m_he * kConst.k_b * temp_k);
}

double temperature_from_de_broglie(double lambda_m) {
    if (!(lambda_m > 0.0)) {
        throw std::invalid_argument("temperature_from_de_broglie: lambda must be positive");
    }
    const double p = kConst.h / lambda_m;
    return p * p / (3.0 * kConst.m_he * kConst.k_b);
}

}  // namespace mwfzp
