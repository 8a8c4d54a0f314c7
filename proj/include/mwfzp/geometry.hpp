// Negative Fresnel zone plate layout: opacity mask, barrier potential and
// the perpendicular distance field to the nearest opaque surface.
#pragma once

#include "mwfzp/grid.hpp"

#include <vector>

namespace mwfzp {

/// Zone plate geometry in scaled units. Zone n spans (r_{n-1}, r_n] with
/// r_n = sqrt(n * lambda * f_cal); odd zones (and the central disc, n = 1)
/// are opaque. f_cal is tied to r1 by r1^2 = lambda * f_cal.
struct ZonePlateSpec {
    double r1 = 0.0;       // radius of the central (opaque) zone
    double lambda = 0.0;   // de Broglie wavelength
    double f_cal = 0.0;    // calculated focal length, r1^2 / lambda
    double d = 0.0;        // slab thickness along X
    double w_g0 = 0.0;     // barrier height, scaled energy
    double x_front = 0.0;  // X of the slab front face
    int n_zones = 0;

    static ZonePlateSpec make(double r1, double lambda, double d, double w_g0,
                              double x_front, int n_zones);

    double zone_radius(int n) const;

    /// Zone index n such that r_{n-1} < r <= r_n, or n_zones + 1 beyond the
    /// last zone (substrate), or 0 for r <= 0 handled as zone 1.
    int zone_of_radius(double r) const;

    bool radius_is_opaque(double r) const;

    /// Slab membership of an X cell center: x_front <= x < x_front + d.
    bool x_in_slab(double x) const { return x >= x_front && x < x_front + d; }
};

/// Largest n with r_n <= half_width (at least 1).
int auto_zone_count(double r1, double half_width);

struct OpacityMask {
    ScalarField2D values;  // entries exactly 0 or 1
    ZonePlateSpec plate;
};

/// Rasterize the zone layout by cell-center membership. Material beyond the
/// outermost zone is opaque (plate substrate). Throws if the outermost zone
/// is thinner than two cells.
OpacityMask build_opacity_mask(const GridSpec& grid, const ZonePlateSpec& spec);

/// W_g = w_g0 * mask, elementwise.
ScalarField2D geometric_potential(const OpacityMask& mask, double w_g0);

/// Perpendicular distance to the nearest opaque surface, from the continuum
/// zone geometry. Inside the slab the distance is along Y to the channel
/// walls; outside it is the Euclidean distance to the opaque region. Opaque
/// cells carry 0.
ScalarField2D distance_field(const OpacityMask& mask);

/// Variant used for the surface-interaction field: inside the slab identical
/// to distance_field; outside, the distance is taken along X to the nearer
/// slab face, uniform across Y.
ScalarField2D distance_field_axial(const OpacityMask& mask);

}  // namespace mwfzp
