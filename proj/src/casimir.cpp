#include "mwfzp/casimir.hpp"

#include <cmath>
#include <stdexcept>

namespace mwfzp {

double casimir_vdw_point(double chi_m, const CasimirParams& p) {
    if (chi_m < 0.0) throw std::invalid_argument("casimir_vdw: chi must be >= 0");
    const double c4 = p.c4();
    const double lam = p.lambda_cut;
    if (chi_m > lam) {
        return -c4 / ((chi_m + p.l) * chi_m * chi_m * chi_m);
    }
    if (chi_m == 0.0) {
        return -c4 * (6.0 * lam + 5.0 * p.l) /
               (2.0 * lam * lam * lam * (lam + p.l) * (lam + p.l));
    }
    const double lam5 = lam * lam * lam * lam * lam;
    const double lp = (lam + p.l) * (lam + p.l);
    return c4 / (2.0 * lam5 * lp) *
           ((4.0 * lam + 3.0 * p.l) * chi_m * chi_m -
            (6.0 * lam + 5.0 * p.l) * lam * lam);
}

ScalarField2D casimir_vdw(const ScalarField2D& chi, const CasimirParams& p,
                          const ScalingFactors& sf) {
    ScalarField2D w(chi.grid);
    for (std::size_t k = 0; k < chi.size(); ++k) {
        const double v = casimir_vdw_point(chi.v[k] * sf.beta, p) / sf.v0;
        w.v[k] = (std::abs(v) < 1e-12) ? 0.0 : v;
    }
    return w;
}

ScalarField2D total_potential(const ScalarField2D& geometric,
                              const ScalarField2D& casimir,
                              const ScalarField2D& induced) {
    require_same_grid(geometric.grid, casimir.grid, "total_potential");
    require_same_grid(geometric.grid, induced.grid, "total_potential");
    ScalarField2D w(geometric.grid);
    for (std::size_t k = 0; k < w.size(); ++k) {
        w.v[k] = geometric.v[k] + casimir.v[k] + induced.v[k];
    }
    return w;
}

}  // namespace mwfzp
