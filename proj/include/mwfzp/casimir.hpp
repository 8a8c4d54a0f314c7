// Regularized Casimir-van der Waals atom-surface potential and assembly of
// the total scaled potential entering the Hamiltonian.
#pragma once

#include "mwfzp/constants.hpp"
#include "mwfzp/grid.hpp"

namespace mwfzp {

/// SI parameters of the atom-surface interaction. C4 = C3 * l.
struct CasimirParams {
    double c3 = 2.5e-50;      // J m^3, He on Cr
    double l = 9.3e-9;        // m, vdW -> Casimir transition length
    double lambda_cut = 1e-8; // m, regularization cutoff

    double c4() const { return c3 * l; }
};

/// Piecewise potential in joules at perpendicular distance chi_m >= 0 (meters):
/// -C4/((chi+l) chi^3) beyond the cutoff, continued below it as a parabola
/// with vertex at chi = 0, matching value and slope at the seam.
double casimir_vdw_point(double chi_m, const CasimirParams& p);

/// Elementwise evaluation over a scaled distance field; output in scaled
/// energy units. Magnitudes below 1e-12 scaled are stored as exact zeros.
ScalarField2D casimir_vdw(const ScalarField2D& chi, const CasimirParams& p,
                          const ScalingFactors& sf);

/// W_g + W_int + W_induced, elementwise; all on one grid.
ScalarField2D total_potential(const ScalarField2D& geometric,
                              const ScalarField2D& casimir,
                              const ScalarField2D& induced);

}  // namespace mwfzp
