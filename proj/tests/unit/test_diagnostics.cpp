#include "mwfzp/diagnostics.hpp"

#include <doctest.h>

#include <cmath>

using namespace mwfzp;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("transmission and reflected probability split the norm") {
    const GridSpec g = GridSpec::centered(33, 1.0);
    ComplexField2D psi(g);
    psi.at(5, 16) = Complex(2.0, 0.0);    // x = -11
    psi.at(20, 16) = Complex(0.0, 1.0);   // x = +4
    psi.at(16, 8) = Complex(1.0, 1.0);            // x = 0 plane itself
    CHECK(transmission(psi, 0.0) == doctest::Approx(1.0 * g.cell_area()).epsilon(1e-12));
    CHECK(probability_below(psi, 0.0) == doctest::Approx(4.0 * g.cell_area()).epsilon(1e-12));
    const double total = total_norm(psi);
    CHECK(rel(transmission(psi, 0.0) + probability_below(psi, 0.0) + 2.0 * g.cell_area(),
              total) < 1e-12);

    ComplexField2D left_only(g);
    left_only.at(2, 3) = Complex(1.0, 0.0);
    CHECK(transmission(left_only, 0.0) == 0.0);
}

TEST_CASE("axial accumulation adds |psi(X, 0)|^2 dT") {
    const GridSpec g = GridSpec::centered(33, 1.0);
    AxialProfile p = make_axial_profile(g, 0.25);
    ComplexField2D zero(g);
    axial_accumulate(p, zero);
    for (double v : p.intensity) CHECK(v == 0.0);

    ComplexField2D psi(g);
    const int j0 = g.axis_row();
    psi.at(10, j0) = Complex(0.0, 3.0);
    psi.at(10, j0 + 4) = Complex(5.0, 0.0);  // off-axis, ignored
    axial_accumulate(p, psi);
    axial_accumulate(p, psi);
    CHECK(p.intensity[10] == doctest::Approx(2.0 * 9.0 * 0.25).epsilon(1e-12));
    CHECK(p.intensity[11] == 0.0);
}

namespace {
AxialProfile synthetic_profile(double f1, double h1, double f3, double h3, double ripple) {
    const GridSpec g = GridSpec::make(201, 16, 1.0, 0.0, 0.0);
    AxialProfile p = make_axial_profile(g, 1.0);
    for (int i = 0; i < g.nx; ++i) {
        const double x = p.x[i];
        double v = h1 * std::exp(-0.5 * std::pow((x - f1) / 6.0, 2)) +
                   h3 * std::exp(-0.5 * std::pow((x - f3) / 2.5, 2));
        v += ripple * std::sin(1.7 * x) * std::exp(-0.5 * std::pow((x - 60.0) / 30.0, 2));
        p.intensity[i] = v;
    }
    return p;
}
}  // namespace

TEST_CASE("focal point detection with prominence and order assignment") {
    const AxialProfile p = synthetic_profile(90.0, 1.0, 30.0, 0.16, 0.004);
    const auto peaks = find_focal_points(p, 0.05, 10.0);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].order == 1);
    CHECK(std::abs(peaks[0].position - 90.0) < 0.1);
    CHECK(peaks[1].order == 3);
    CHECK(std::abs(peaks[1].position - 30.0) < 0.1);
    CHECK(peaks[0].peak_intensity > peaks[1].peak_intensity);

    // An even-order satellite is labeled by the nearest integer ratio.
    const AxialProfile q = synthetic_profile(90.0, 1.0, 45.0, 0.2, 0.0);
    const auto qpk = find_focal_points(q, 0.05, 10.0);
    REQUIRE(qpk.size() == 2);
    CHECK(qpk[1].order == 2);

    // Prominence filter rejects the ripple.
    const AxialProfile r = synthetic_profile(90.0, 1.0, 30.0, 0.02, 0.004);
    const auto rpk = find_focal_points(r, 0.05, 10.0);
    CHECK(rpk.size() == 1);

    // The x_min cut hides the low peak entirely.
    const auto cpk = find_focal_points(p, 0.05, 40.0);
    REQUIRE(cpk.size() == 1);
    CHECK(cpk[0].order == 1);

    AxialProfile flat = p;
    for (double& v : flat.intensity) v = 0.0;
    CHECK(find_focal_points(flat, 0.05, 10.0).empty());
}

TEST_CASE("spot FWHM of a Gaussian density") {
    const GridSpec g = GridSpec::centered(129, 1.0);
    const double s_density = 6.0;  // std of |psi|^2
    ComplexField2D psi(g);
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            const double dens = std::exp(-0.5 * std::pow(g.y(j) / s_density, 2)) *
                                std::exp(-0.5 * std::pow((g.x(i) - 20.0) / 15.0, 2));
            psi.at(i, j) = std::sqrt(dens);
        }
    }
    const SpotMetrics m = spot_fwhm(psi, 20.0, -60.0);
    const double expect_y = 2.0 * std::sqrt(2.0 * std::log(2.0)) * s_density;
    const double expect_x = 2.0 * std::sqrt(2.0 * std::log(2.0)) * 15.0;
    CHECK(std::abs(m.fwhm_y - expect_y) < 1.0);
    CHECK(std::abs(m.fwhm_x - expect_x) < 1.0);
    CHECK(!m.off_axis);
    CHECK(m.y_peak == 0.0);

    // An off-axis peak is flagged.
    ComplexField2D shifted(g);
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            shifted.at(i, j) = psi.at(i, std::min(g.ny - 1, std::max(0, j - 8)));
        }
    }
    CHECK(spot_fwhm(shifted, 20.0, -60.0).off_axis);
}

TEST_CASE("efficiency window captures the expected fraction") {
    const GridSpec g = GridSpec::centered(129, 1.0);
    ComplexField2D psi(g);
    double norm = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            const double dens = std::exp(-0.5 * std::pow(g.y(j) / 4.0, 2)) *
                                std::exp(-0.5 * std::pow(g.x(i) / 5.0, 2));
            psi.at(i, j) = std::sqrt(dens);
            norm += dens;
        }
    }
    const double scale = 1.0 / std::sqrt(norm * g.cell_area());
    for (Complex& c : psi.v) c *= scale;

    const SpotMetrics m = spot_fwhm(psi, 0.0, -60.0);
    // A huge window captures everything.
    CHECK(efficiency(psi, m, 20.0) == doctest::Approx(1.0).epsilon(1e-9));
    // +-FWHM of a Gaussian density holds erf(2 sqrt(ln 2))^2 of the mass.
    const double per_axis = std::erf(2.0 * std::sqrt(std::log(2.0)) / std::sqrt(2.0) *
                                     std::sqrt(2.0));
    CHECK(efficiency(psi, m, 1.0) ==
          doctest::Approx(per_axis * per_axis).epsilon(0.02));
}

TEST_CASE("induced phase shift along a channel") {
    const ScalingFactors sf = scaling_from_beta(5e-9);
    const GridSpec g = GridSpec::centered(65, 1.0);
    const ZonePlateSpec s = ZonePlateSpec::make(10.0, 4.0, 6.0, 5.0, 0.0, 4);
    const OpacityMask mask = build_opacity_mask(g, s);

    ScalarField2D w(g);
    CHECK(induced_phase_shift(w, mask, 12.0, 2.0, sf) == 0.0);  // zero field

    const double c = -0.4;  // scaled
    for (double& v : w.v) v = c;
    // y = 12 runs through the transparent second zone (r1=10, r2=14.1).
    const double shift = induced_phase_shift(w, mask, 12.0, 2.0, sf);
    // Trapezoid over the slab columns x = 0..5: span 5 cells.
    const double expected = -c * 5.0 * sf.v0 * sf.beta / (kConst.hbar * 2.0);
    CHECK(rel(shift, expected) < 1e-12);
    CHECK(shift > 0.0);  // attractive potential advances the phase

    CHECK_THROWS_AS(induced_phase_shift(w, mask, 0.0, 2.0, sf), std::invalid_argument);
    CHECK_THROWS_AS(induced_phase_shift(w, mask, 1e9, 2.0, sf), std::invalid_argument);
}
