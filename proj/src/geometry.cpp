#include "mwfzp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mwfzp {

ZonePlateSpec ZonePlateSpec::make(double r1, double lambda, double d, double w_g0,
                                  double x_front, int n_zones) {
    if (!(r1 > 0.0) || !(lambda > 0.0)) {
        throw std::invalid_argument("ZonePlateSpec: r1 and lambda must be positive");
    }
    if (!(d > 0.0) || !(w_g0 > 0.0)) {
        throw std::invalid_argument("ZonePlateSpec: d and w_g0 must be positive");
    }
    if (n_zones < 1) throw std::invalid_argument("ZonePlateSpec: n_zones must be >= 1");
    ZonePlateSpec s;
    s.r1 = r1;
    s.lambda = lambda;
    s.f_cal = r1 * r1 / lambda;
    s.d = d;
    s.w_g0 = w_g0;
    s.x_front = x_front;
    s.n_zones = n_zones;
    return s;
}

double ZonePlateSpec::zone_radius(int n) const {
    if (n < 1 || n > n_zones) {
        throw std::invalid_argument("zone_radius: n out of [1, n_zones]");
    }
    return std::sqrt(static_cast<double>(n) * lambda * f_cal);
}

int ZonePlateSpec::zone_of_radius(double r) const {
    if (r <= 0.0) return 1;
    // r_n^2 = n * r1^2, so n = ceil(r^2 / r1^2).
    const double n_real = (r * r) / (lambda * f_cal);
    int n = static_cast<int>(std::ceil(n_real));
    if (n < 1) n = 1;
    if (n > n_zones) return n_zones + 1;
    return n;
}

bool ZonePlateSpec::radius_is_opaque(double r) const {
    const int n = zone_of_radius(r);
    if (n > n_zones) return true;  // substrate beyond the outermost zone
    return (n % 2) == 1;
}

int auto_zone_count(double r1, double half_width) {
    const int n = static_cast<int>(std::floor((half_width * half_width) / (r1 * r1)));
    return std::max(1, n);
}

OpacityMask build_opacity_mask(const GridSpec& grid, const ZonePlateSpec& spec) {
    const double outer_width =
        spec.zone_radius(spec.n_zones) -
        (spec.n_zones > 1 ? spec.zone_radius(spec.n_zones - 1) : 0.0);
    if (outer_width < 2.0 * grid.dx) {
        throw std::invalid_argument(
            "build_opacity_mask: outermost zone thinner than two cells; refine the grid "
            "or reduce n_zones");
    }

    OpacityMask mask{ScalarField2D(grid), spec};
    for (int i = 0; i < grid.nx; ++i) {
        if (!spec.x_in_slab(grid.x(i))) continue;
        for (int j = 0; j < grid.ny; ++j) {
            const double r = std::abs(grid.y(j));
            mask.values.at(i, j) = spec.radius_is_opaque(r) ? 1.0 : 0.0;
        }
    }
    return mask;
}

ScalarField2D geometric_potential(const OpacityMask& mask, double w_g0) {
    ScalarField2D w(mask.values.grid);
    for (std::size_t k = 0; k < w.size(); ++k) w.v[k] = w_g0 * mask.values.v[k];
    return w;
}

namespace {

// 1D distance from |y| = r to the opaque radial set: the central disc
// [0, r1], the rings [r_{2k}, r_{2k+1}] and the substrate [r_N, inf).
double radial_distance_to_opaque(double r, const ZonePlateSpec& s,
                                 const std::vector<double>& radii) {
    if (s.radius_is_opaque(r)) return 0.0;
    const int n = s.zone_of_radius(r);  // transparent zone index (even)
    // Walls of transparent zone n are the radii r_{n-1} and r_n.
    const double inner = radii[n - 1];
    const double outer = (n <= s.n_zones) ? radii[n] : inner;
    return std::min(r - inner, outer - r);
}

}  // namespace

namespace {

ScalarField2D distance_field_impl(const OpacityMask& mask, bool axial_outside) {
    const GridSpec& grid = mask.values.grid;
    const ZonePlateSpec& s = mask.plate;

    std::vector<double> radii(static_cast<std::size_t>(s.n_zones) + 1, 0.0);
    for (int n = 1; n <= s.n_zones; ++n) radii[n] = s.zone_radius(n);

    // Radial 1D distances are shared by every column.
    std::vector<double> radial(grid.ny);
    for (int j = 0; j < grid.ny; ++j) {
        radial[j] = radial_distance_to_opaque(std::abs(grid.y(j)), s, radii);
    }

    ScalarField2D chi(grid);
    const double x_back = s.x_front + s.d;
    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.x(i);
        const bool in_slab = s.x_in_slab(x);
        const double ax = in_slab ? 0.0 : std::max(s.x_front - x, x - x_back);
        for (int j = 0; j < grid.ny; ++j) {
            if (mask.values.at(i, j) != 0.0) {
                chi.at(i, j) = 0.0;
            } else if (in_slab) {
                chi.at(i, j) = radial[j];
            } else {
                chi.at(i, j) = axial_outside ? ax : std::hypot(ax, radial[j]);
            }
        }
    }
    return chi;
}

}  // namespace

ScalarField2D distance_field(const OpacityMask& mask) {
    return distance_field_impl(mask, false);
}

ScalarField2D distance_field_axial(const OpacityMask& mask) {
    return distance_field_impl(mask, true);
}

double total_norm(const ComplexField2D& psi) {
    double s = 0.0;
    for (const Complex& c : psi.v) s += std::norm(c);
    return s * psi.grid.cell_area();
}

}  // namespace mwfzp
