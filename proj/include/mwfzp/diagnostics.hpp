// Wave-packet diagnostics: transmission, time-integrated axial intensity,
// focal-point detection, spot size, focusing efficiency and the induced
// phase-shift estimate.
#pragma once

#include "mwfzp/constants.hpp"
#include "mwfzp/geometry.hpp"
#include "mwfzp/grid.hpp"

#include <optional>
#include <vector>

namespace mwfzp {

/// Probability beyond the plane X > x_plane (the transmission integral when
/// evaluated after the reflected part has been absorbed).
double transmission(const ComplexField2D& psi, double x_plane = 0.0);

/// Probability at X < x_plane (reflected/incident side).
double probability_below(const ComplexField2D& psi, double x_plane);

/// Time-integrated |psi(X, Y=0, T)|^2 along the optical axis.
struct AxialProfile {
    std::vector<double> x;
    std::vector<double> intensity;
    double sample_dt = 0.0;
};

AxialProfile make_axial_profile(const GridSpec& grid, double sample_dt);

/// Adds |psi(X, 0)|^2 * sample_dt for one observer sample.
void axial_accumulate(AxialProfile& profile, const ComplexField2D& psi);

struct FocalPoint {
    int order = 0;
    double position = 0.0;        // scaled X, sub-cell refined
    double peak_intensity = 0.0;  // integrated axial intensity at the peak
    double arrival_t = -1.0;      // filled from the axial time series
};

/// Local maxima of the profile restricted to X > x_min with topographic
/// prominence at least min_prominence of the restricted maximum. The
/// farthest peak is order 1; others get order round(f1 / position).
/// Returned sorted by decreasing X.
std::vector<FocalPoint> find_focal_points(const AxialProfile& profile,
                                          double min_prominence, double x_min,
                                          double x_max = 1e300);

struct SpotMetrics {
    double fwhm_y = 0.0;        // scaled FWHM of |psi|^2 across the focus
    double fwhm_x = 0.0;        // scaled FWHM along the axis
    double peak_density = 0.0;  // |psi|^2 at the focal cell
    double y_peak = 0.0;
    int i_peak = 0;
    int j_peak = 0;
    bool off_axis = false;      // peak more than two cells from the axis
    bool clipped = false;       // a half-maximum crossing ran off the grid
};

/// Transverse/axial widths of |psi|^2 around the focus at x_focus, FWHM by
/// linear interpolation between cells. x_min restricts the axial search to
/// beyond the plate.
SpotMetrics spot_fwhm(const ComplexField2D& psi, double x_focus, double x_min);

/// Probability inside the rectangular window centered on the focal peak with
/// extents +-scale*FWHM along each axis (I_initial = 1 for the normalized
/// packet).
double efficiency(const ComplexField2D& psi, const SpotMetrics& spot, double scale = 1.0);

/// -(1/(hbar v)) integral of V_induced along the X-directed segment through
/// the slab at height y; trapezoid rule on cell samples. Throws if the path
/// crosses opaque material.
double induced_phase_shift(const ScalarField2D& w_induced, const OpacityMask& mask,
                           double y, double v_mps, const ScalingFactors& sf);

}  // namespace mwfzp
