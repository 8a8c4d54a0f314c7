#include "mwfzp/electrostatics.hpp"

#include "mwfzp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mwfzp {

double BiasScheme::voltage(int n) const {
    switch (variant) {
        case BiasVariant::Unbiased: return 0.0;
        case BiasVariant::Uniform: return v1;
        case BiasVariant::SqrtN: return v1 * std::sqrt(static_cast<double>(n));
        case BiasVariant::Sinusoidal: return v1 * std::sin(k_e * n);
    }
    return 0.0;
}

std::vector<std::pair<int, double>> bias_voltages(const BiasScheme& scheme, int n_zones) {
    if (n_zones < 1) throw std::invalid_argument("bias_voltages: n_zones must be >= 1");
    std::vector<std::pair<int, double>> out;
    for (int n = 1; n <= n_zones; n += 2) out.emplace_back(n, scheme.voltage(n));
    return out;
}

ElectrodeSet make_electrodes(const OpacityMask& mask, const BiasScheme& scheme) {
    const GridSpec& grid = mask.values.grid;
    ElectrodeSet es{grid, std::vector<std::uint8_t>(grid.size(), 0),
                    std::vector<double>(grid.size(), 0.0)};
    const ZonePlateSpec& s = mask.plate;
    for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.ny; ++j) {
            const std::size_t k = grid.idx(i, j);
            if (mask.values.v[k] == 0.0) continue;
            es.fixed[k] = 1;
            const int n = s.zone_of_radius(std::abs(grid.y(j)));
            es.voltage[k] = (n <= s.n_zones) ? scheme.voltage(n) : 0.0;
        }
    }
    // Grounded outer boundary.
    for (int i = 0; i < grid.nx; ++i) {
        for (int j : {0, grid.ny - 1}) {
            const std::size_t k = grid.idx(i, j);
            if (!es.fixed[k]) { es.fixed[k] = 1; es.voltage[k] = 0.0; }
        }
    }
    for (int j = 0; j < grid.ny; ++j) {
        for (int i : {0, grid.nx - 1}) {
            const std::size_t k = grid.idx(i, j);
            if (!es.fixed[k]) { es.fixed[k] = 1; es.voltage[k] = 0.0; }
        }
    }
    return es;
}

namespace {

// One red-black SOR pass over cells of the given parity; returns the max
// absolute update.
double sor_sweep(const ElectrodeSet& es, std::vector<double>& v, double omega,
                 int parity) {
    const int nx = es.grid.nx, ny = es.grid.ny;
    double max_update = 0.0;
    for (int i = 1; i < nx - 1; ++i) {
        const std::size_t row = static_cast<std::size_t>(i) * ny;
        int j = 1 + ((i + 1 + parity) & 1);
        for (; j < ny - 1; j += 2) {
            const std::size_t k = row + j;
            if (es.fixed[k]) continue;
            const double nb = v[k - ny] + v[k + ny] + v[k - 1] + v[k + 1];
            const double upd = omega * (0.25 * nb - v[k]);
            v[k] += upd;
            max_update = std::max(max_update, std::abs(upd));
        }
    }
    return max_update;
}

struct SorOutcome {
    bool converged = false;
    bool diverged = false;
    double residual = 0.0;
    int iterations = 0;
};

SorOutcome run_sor(const ElectrodeSet& es, std::vector<double>& v, double omega,
                   double tol, int max_iter, double vscale) {
    SorOutcome out;
    for (int it = 1; it <= max_iter; ++it) {
        const double u1 = sor_sweep(es, v, omega, 0);
        const double u2 = sor_sweep(es, v, omega, 1);
        const double upd = std::max(u1, u2);
        out.residual = upd / vscale;
        out.iterations = it;
        if (!std::isfinite(upd) || upd > 1e9 * vscale) {
            out.diverged = true;
            return out;
        }
        if (out.residual <= tol) {
            out.converged = true;
            return out;
        }
    }
    return out;
}

}  // namespace

ElectrostaticSolution solve_laplace_sor(const ElectrodeSet& es, const SorOptions& opt,
                                        double beta_m) {
    if (!(opt.omega > 1.0 && opt.omega < 2.0)) {
        throw std::invalid_argument("solve_laplace_sor: omega must lie in (1, 2)");
    }
    if (!(opt.tol > 0.0)) throw std::invalid_argument("solve_laplace_sor: tol must be positive");

    double vscale = 0.0;
    for (std::size_t k = 0; k < es.grid.size(); ++k) {
        if (es.fixed[k]) vscale = std::max(vscale, std::abs(es.voltage[k]));
    }

    ElectrostaticSolution sol;
    sol.potential = ScalarField2D(es.grid);
    for (std::size_t k = 0; k < es.grid.size(); ++k) {
        sol.potential.v[k] = es.fixed[k] ? es.voltage[k] : 0.0;
    }

    if (vscale > 0.0) {
        SorOutcome out = run_sor(es, sol.potential.v, opt.omega, opt.tol, opt.max_iter, vscale);
        if (out.diverged) {
            // Conservative retry; omega near 2 can overshoot on coarse features.
            for (std::size_t k = 0; k < es.grid.size(); ++k) {
                sol.potential.v[k] = es.fixed[k] ? es.voltage[k] : 0.0;
            }
            out = run_sor(es, sol.potential.v, 1.5, opt.tol, opt.max_iter, vscale);
        }
        sol.residual = out.residual;
        sol.iterations = out.iterations;
        if (!out.converged) {
            throw convergence_error("SOR did not converge: residual " +
                                    std::to_string(out.residual) + " after " +
                                    std::to_string(out.iterations) + " iterations");
        }
    }

    electric_field(sol.potential, beta_m, sol.field_x, sol.field_y);
    return sol;
}

void electric_field(const ScalarField2D& potential, double beta_m, ScalarField2D& ex,
                    ScalarField2D& ey) {
    const GridSpec& g = potential.grid;
    ex = ScalarField2D(g);
    ey = ScalarField2D(g);
    const double hx = 1.0 / (g.dx * beta_m);
    const double hy = 1.0 / (g.dy * beta_m);
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            double dvx, dvy;
            if (i == 0) dvx = potential.at(1, j) - potential.at(0, j);
            else if (i == g.nx - 1) dvx = potential.at(i, j) - potential.at(i - 1, j);
            else dvx = 0.5 * (potential.at(i + 1, j) - potential.at(i - 1, j));
            if (j == 0) dvy = potential.at(i, 1) - potential.at(i, 0);
            else if (j == g.ny - 1) dvy = potential.at(i, j) - potential.at(i, j - 1);
            else dvy = 0.5 * (potential.at(i, j + 1) - potential.at(i, j - 1));
            ex.at(i, j) = -dvx * hx;
            ey.at(i, j) = -dvy * hy;
        }
    }
}

ScalarField2D induced_potential(const ElectrostaticSolution& sol, const ScalarField2D& chi,
                                const OpacityMask& mask, const PolarizabilityParams& pol,
                                const InducedOptions& opt, const ScalingFactors& sf) {
    const GridSpec& g = chi.grid;
    require_same_grid(g, sol.potential.grid, "induced_potential");
    require_same_grid(g, mask.values.grid, "induced_potential");

    const double alpha = pol.alpha_si();
    const double image_pref = alpha * alpha / (32.0 * std::numbers::pi * kConst.eps0);
    ScalarField2D w(g);
    for (int i = 0; i < g.nx; ++i) {
        const bool in_slab = mask.plate.x_in_slab(g.x(i));
        for (int j = 0; j < g.ny; ++j) {
            const std::size_t k = g.idx(i, j);
            const double ex = sol.field_x.v[k];
            const double ey = sol.field_y.v[k];
            const double e2 = ex * ex + ey * ey;
            if (e2 == 0.0) continue;
            double v = -0.5 * alpha * e2;
            if (opt.include_image_term) {
                // (E_hat . n_hat)^2 with the normal of the nearest surface.
                const double en = in_slab ? ey : ex;
                const double proj2 = (en * en) / e2;
                const double chi_m = std::max(chi.v[k] * sf.beta, opt.lambda_cut_m);
                v -= image_pref * e2 * (proj2 + 1.0) / (chi_m * chi_m * chi_m);
            }
            w.v[k] = v / sf.v0;
        }
    }
    return w;
}

double analytic_induced_sqrt(double v1, double lambda_m, double f_cal_m,
                             const PolarizabilityParams& pol) {
    if (v1 < 0.0) throw std::invalid_argument("analytic_induced_sqrt: V1 must be >= 0");
    return -pol.alpha_si() * v1 * v1 / (2.0 * lambda_m * f_cal_m);
}

double analytic_induced_sin(double v1, double k_e, double n, double lambda_m,
                            double f_cal_m, const PolarizabilityParams& pol) {
    if (v1 < 0.0) throw std::invalid_argument("analytic_induced_sin: V1 must be >= 0");
    if (n < 1.0) throw std::invalid_argument("analytic_induced_sin: n must be >= 1");
    const double c = std::cos(k_e * n);
    return -2.0 * pol.alpha_si() * v1 * v1 * k_e * k_e * n * c * c / (lambda_m * f_cal_m);
}

}  // namespace mwfzp
