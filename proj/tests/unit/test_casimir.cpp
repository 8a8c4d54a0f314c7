#include "mwfzp/casimir.hpp"
#include "mwfzp/geometry.hpp"

#include <doctest.h>

#include <cmath>

using namespace mwfzp;

namespace {
const CasimirParams kHeCr{};  // C3 = 2.5e-50 J m^3, l = 9.3 nm, Lambda = 10 nm
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("branches agree at the regularization seam") {
    const double lam = kHeCr.lambda_cut;
    const double outer = -kHeCr.c4() / ((lam + kHeCr.l) * lam * lam * lam);
    CHECK(rel(casimir_vdw_point(lam, kHeCr), outer) < 1e-12);
    // continuity from both sides
    CHECK(rel(casimir_vdw_point(lam * (1.0 + 1e-9), kHeCr), outer) < 1e-6);
    CHECK(rel(casimir_vdw_point(lam * (1.0 - 1e-9), kHeCr), outer) < 1e-6);
}

TEST_CASE("derivative is continuous at the seam") {
    const double lam = kHeCr.lambda_cut;
    const double h = lam * 1e-7;  // the curvature jump at the seam adds O(h)
    const double fd =
        (casimir_vdw_point(lam + h, kHeCr) - casimir_vdw_point(lam - h, kHeCr)) / (2.0 * h);
    const double analytic = kHeCr.c4() * (4.0 * lam + 3.0 * kHeCr.l) /
                            ((lam + kHeCr.l) * (lam + kHeCr.l) * lam * lam * lam * lam);
    CHECK(rel(fd, analytic) < 1e-6);
    CHECK(rel(analytic, 4.238167467583022e-18) < 1e-12);
}

TEST_CASE("surface value of the parabolic cap") {
    CHECK(rel(casimir_vdw_point(0.0, kHeCr), -3.3237469462267443e-26) < 1e-12);
    // roughly -0.207 ueV
    CHECK(std::abs(casimir_vdw_point(0.0, kHeCr) / 1.602176634e-19 * 1e6 + 0.207) < 1e-3);
}

TEST_CASE("potential decays monotonically to zero beyond the cutoff") {
    double prev = casimir_vdw_point(kHeCr.lambda_cut, kHeCr);
    for (double chi = 1.2e-8; chi < 3e-7; chi *= 1.3) {
        const double v = casimir_vdw_point(chi, kHeCr);
        CHECK(v < 0.0);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("cap is parabolic with its minimum at the surface") {
    const double v0 = casimir_vdw_point(0.0, kHeCr);
    for (double chi = 1e-9; chi <= kHeCr.lambda_cut; chi += 1e-9) {
        CHECK(casimir_vdw_point(chi, kHeCr) > v0);
    }
    // quadratic in chi: V(chi) - V(0) proportional to chi^2
    const double d1 = casimir_vdw_point(2e-9, kHeCr) - v0;
    const double d2 = casimir_vdw_point(4e-9, kHeCr) - v0;
    CHECK(rel(d2, 4.0 * d1) < 1e-9);
}

TEST_CASE("asymptotic regimes") {
    // Casimir regime: V chi^4 -> -C4. At chi = 10 l the residual l/(chi+l)
    // correction is still 9 percent; at 20 l it is inside 5 percent.
    const double c10 = casimir_vdw_point(10.0 * kHeCr.l, kHeCr) * std::pow(10.0 * kHeCr.l, 4);
    CHECK(rel(c10, -kHeCr.c4() * 10.0 / 11.0) < 1e-9);
    const double c20 = casimir_vdw_point(20.0 * kHeCr.l, kHeCr) * std::pow(20.0 * kHeCr.l, 4);
    CHECK(std::abs(c20 / -kHeCr.c4() - 1.0) < 0.05);

    // van der Waals regime lives below the cutoff, so probe the analytic
    // branch itself: -C4/((chi+l) chi^3) times chi^3 -> -C3 for chi << l.
    auto branch = [&](double chi) { return -kHeCr.c4() / ((chi + kHeCr.l) * chi * chi * chi); };
    const double chi_v = kHeCr.l / 20.0;
    CHECK(std::abs(branch(chi_v) * chi_v * chi_v * chi_v / -kHeCr.c3 - 1.0) < 0.05);
}

TEST_CASE("negative distance is rejected") {
    CHECK_THROWS_AS(casimir_vdw_point(-1e-12, kHeCr), std::invalid_argument);
}

TEST_CASE("field evaluation converts to scaled energy with a far cutoff") {
    const ScalingFactors sf = scaling_from_beta(5e-9);
    GridSpec g = GridSpec::make(16, 16, 1.0, 0.0, 0.0);
    ScalarField2D chi(g);
    chi.at(0, 0) = 0.0;
    chi.at(0, 1) = 2.0;          // 10 nm = the cutoff
    chi.at(0, 2) = 4.0e7;        // 0.2 m: far beyond any effect
    const ScalarField2D w = casimir_vdw(chi, kHeCr, sf);
    CHECK(rel(w.at(0, 0), -3.3237469462267443e-26 / sf.v0) < 1e-12);
    CHECK(rel(w.at(0, 1), -1.204663212435233e-26 / sf.v0) < 1e-12);
    CHECK(w.at(0, 2) == 0.0);  // stored as exact zero
}

TEST_CASE("total potential sums fields and rejects grid mismatch") {
    GridSpec g = GridSpec::make(16, 16, 1.0, 0.0, 0.0);
    ScalarField2D a(g), b(g), c(g);
    a.at(1, 2) = 2.0;
    b.at(1, 2) = -0.5;
    c.at(1, 2) = 0.25;
    const ScalarField2D t = total_potential(a, b, c);
    CHECK(t.at(1, 2) == 1.75);
    CHECK(t.at(0, 0) == 0.0);

    GridSpec g2 = GridSpec::make(16, 17, 1.0, 0.0, 0.0);
    ScalarField2D d(g2);
    CHECK_THROWS_AS(total_potential(a, b, d), std::invalid_argument);
}
