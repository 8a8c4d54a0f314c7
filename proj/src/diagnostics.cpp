#include "mwfzp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mwfzp {

double transmission(const ComplexField2D& psi, double x_plane) {
    const GridSpec& g = psi.grid;
    double s = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        if (g.x(i) <= x_plane) continue;
        const std::size_t row = g.idx(i, 0);
        for (int j = 0; j < g.ny; ++j) s += std::norm(psi.v[row + j]);
    }
    return s * g.cell_area();
}

double probability_below(const ComplexField2D& psi, double x_plane) {
    const GridSpec& g = psi.grid;
    double s = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        if (g.x(i) >= x_plane) continue;
        const std::size_t row = g.idx(i, 0);
        for (int j = 0; j < g.ny; ++j) s += std::norm(psi.v[row + j]);
    }
    return s * g.cell_area();
}

AxialProfile make_axial_profile(const GridSpec& grid, double sample_dt) {
    AxialProfile p;
    p.sample_dt = sample_dt;
    p.x.resize(grid.nx);
    p.intensity.assign(grid.nx, 0.0);
    for (int i = 0; i < grid.nx; ++i) p.x[i] = grid.x(i);
    return p;
}

void axial_accumulate(AxialProfile& profile, const ComplexField2D& psi) {
    if (profile.x.size() != static_cast<std::size_t>(psi.grid.nx)) {
        throw std::invalid_argument("axial_accumulate: profile/grid size mismatch");
    }
    const int j0 = psi.grid.axis_row();
    for (int i = 0; i < psi.grid.nx; ++i) {
        profile.intensity[i] += std::norm(psi.at(i, j0)) * profile.sample_dt;
    }
}

namespace {

// Topographic prominence: the drop from the peak to the highest of the two
// key saddles (lowest points on the walks toward higher terrain or the ends).
double prominence(const std::vector<double>& v, int p) {
    const double h = v[p];
    double left_min = h, right_min = h;
    for (int i = p - 1; i >= 0; --i) {
        if (v[i] > h) break;
        left_min = std::min(left_min, v[i]);
    }
    for (int i = p + 1; i < static_cast<int>(v.size()); ++i) {
        if (v[i] > h) break;
        right_min = std::min(right_min, v[i]);
    }
    return h - std::max(left_min, right_min);
}

// Sub-cell peak position by parabolic interpolation.
double refine_peak(const std::vector<double>& x, const std::vector<double>& v, int p) {
    if (p <= 0 || p + 1 >= static_cast<int>(v.size())) return x[p];
    const double denom = v[p - 1] - 2.0 * v[p] + v[p + 1];
    if (denom >= 0.0) return x[p];
    const double shift = 0.5 * (v[p - 1] - v[p + 1]) / denom;
    return x[p] + shift * (x[1] - x[0]);
}

}  // namespace

std::vector<FocalPoint> find_focal_points(const AxialProfile& profile,
                                          double min_prominence, double x_min,
                                          double x_max) {
    const int n = static_cast<int>(profile.x.size());
    int i_begin = 0;
    while (i_begin < n && profile.x[i_begin] <= x_min) ++i_begin;
    int i_end = i_begin;
    while (i_end < n && profile.x[i_end] <= x_max) ++i_end;
    if (i_begin >= i_end - 1) return {};

    std::vector<double> v(profile.intensity.begin() + i_begin,
                          profile.intensity.begin() + i_end);
    std::vector<double> x(profile.x.begin() + i_begin, profile.x.begin() + i_end);
    const double vmax = *std::max_element(v.begin(), v.end());
    if (vmax <= 0.0) return {};

    std::vector<FocalPoint> peaks;
    for (int i = 1; i + 1 < static_cast<int>(v.size()); ++i) {
        if (!(v[i] > v[i - 1] && v[i] >= v[i + 1])) continue;
        if (prominence(v, i) < min_prominence * vmax) continue;
        FocalPoint fp;
        fp.position = refine_peak(x, v, i);
        fp.peak_intensity = v[i];
        peaks.push_back(fp);
    }
    if (peaks.empty()) return {};

    std::sort(peaks.begin(), peaks.end(),
              [](const FocalPoint& a, const FocalPoint& b) { return a.position > b.position; });
    const double f1 = peaks.front().position;
    std::vector<FocalPoint> out;
    for (std::size_t k = 0; k < peaks.size(); ++k) {
        FocalPoint fp = peaks[k];
        fp.order = (k == 0) ? 1 : static_cast<int>(std::lround(f1 / fp.position));
        if (k > 0 && fp.order < 2) continue;  // satellite ripple of F1
        const bool dup = std::any_of(out.begin(), out.end(), [&](const FocalPoint& q) {
            return q.order == fp.order;
        });
        if (!dup) out.push_back(fp);
    }
    return out;
}

namespace {

// Half-maximum crossing positions around a peak by linear interpolation.
// Returns FWHM, sets clipped when a crossing runs off the array.
double fwhm_1d(const std::vector<double>& y, const std::vector<double>& val, int pk,
               bool& clipped) {
    const double half = 0.5 * val[pk];
    double lo = y.front(), hi = y.back();
    bool found_lo = false, found_hi = false;
    for (int i = pk; i > 0; --i) {
        if (val[i - 1] < half) {
            const double t = (val[i] - half) / (val[i] - val[i - 1]);
            lo = y[i] + t * (y[i - 1] - y[i]);
            found_lo = true;
            break;
        }
    }
    for (int i = pk; i + 1 < static_cast<int>(val.size()); ++i) {
        if (val[i + 1] < half) {
            const double t = (val[i] - half) / (val[i] - val[i + 1]);
            hi = y[i] + t * (y[i + 1] - y[i]);
            found_hi = true;
            break;
        }
    }
    if (!found_lo || !found_hi) clipped = true;
    return hi - lo;
}

}  // namespace

SpotMetrics spot_fwhm(const ComplexField2D& psi, double x_focus, double x_min) {
    const GridSpec& g = psi.grid;
    SpotMetrics m;

    int i_f = static_cast<int>(std::lround((x_focus - g.x0) / g.dx));
    i_f = std::clamp(i_f, 0, g.nx - 1);
    m.i_peak = i_f;

    std::vector<double> col(g.ny);
    for (int j = 0; j < g.ny; ++j) col[j] = std::norm(psi.at(i_f, j));
    int j_pk = static_cast<int>(std::max_element(col.begin(), col.end()) - col.begin());
    m.j_peak = j_pk;
    m.y_peak = g.y(j_pk);
    m.peak_density = col[j_pk];
    m.off_axis = std::abs(m.y_peak) > 2.0 * g.dy;

    std::vector<double> ys(g.ny);
    for (int j = 0; j < g.ny; ++j) ys[j] = g.y(j);
    m.fwhm_y = fwhm_1d(ys, col, j_pk, m.clipped);

    // Axial extent through the focus, restricted to beyond the plate.
    int i_begin = 0;
    while (i_begin < g.nx && g.x(i_begin) <= x_min) ++i_begin;
    std::vector<double> row, xs;
    row.reserve(g.nx - i_begin);
    xs.reserve(g.nx - i_begin);
    for (int i = i_begin; i < g.nx; ++i) {
        row.push_back(std::norm(psi.at(i, j_pk)));
        xs.push_back(g.x(i));
    }
    if (!row.empty()) {
        const int ipk = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
        m.fwhm_x = fwhm_1d(xs, row, ipk, m.clipped);
        m.i_peak = i_begin + ipk;
    }
    return m;
}

double efficiency(const ComplexField2D& psi, const SpotMetrics& spot, double scale) {
    const GridSpec& g = psi.grid;
    const double xc = g.x(spot.i_peak);
    const double yc = g.y(spot.j_peak);
    const double wx = scale * spot.fwhm_x;
    const double wy = scale * spot.fwhm_y;
    double s = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        if (std::abs(g.x(i) - xc) > wx) continue;
        for (int j = 0; j < g.ny; ++j) {
            if (std::abs(g.y(j) - yc) > wy) continue;
            s += std::norm(psi.at(i, j));
        }
    }
    return s * g.cell_area();
}

double induced_phase_shift(const ScalarField2D& w_induced, const OpacityMask& mask,
                           double y, double v_mps, const ScalingFactors& sf) {
    const GridSpec& g = w_induced.grid;
    require_same_grid(g, mask.values.grid, "induced_phase_shift");
    const int j = static_cast<int>(std::lround((y - g.y0) / g.dy));
    if (j < 0 || j >= g.ny) throw std::invalid_argument("induced_phase_shift: y off grid");

    const ZonePlateSpec& s = mask.plate;
    double integral = 0.0;  // sum W dX over the slab, trapezoid in X
    double prev = 0.0;
    bool have_prev = false;
    for (int i = 0; i < g.nx; ++i) {
        if (!s.x_in_slab(g.x(i))) continue;
        if (mask.values.at(i, j) != 0.0) {
            throw std::invalid_argument("induced_phase_shift: path crosses opaque material");
        }
        const double w = w_induced.at(i, j);
        if (have_prev) integral += 0.5 * (prev + w) * g.dx;
        prev = w;
        have_prev = true;
    }
    // Scaled integral -> joule meters, then the phase in radians.
    return -integral * sf.v0 * sf.beta / (kConst.hbar * v_mps);
}

}  // namespace mwfzp
