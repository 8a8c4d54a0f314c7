// Uniform 2D grid in scaled units and the real/complex fields living on it.
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mwfzp {

using Complex = std::complex<double>;

/// Square-cell grid. Cell (i, j) has center (x0 + i*dx, y0 + j*dy).
struct GridSpec {
    int nx = 0;
    int ny = 0;
    double dx = 1.0;
    double dy = 1.0;
    double x0 = 0.0;
    double y0 = 0.0;

    static GridSpec make(int nx, int ny, double dx, double x0, double y0) {
        if (nx < 16 || ny < 16) throw std::invalid_argument("GridSpec: nx, ny must be >= 16");
        if (!(dx > 0.0)) throw std::invalid_argument("GridSpec: dx must be positive");
        return GridSpec{nx, ny, dx, dx, x0, y0};
    }

    /// Centered domain [-L, L] with n cells per side, dx = 2L/(n-1).
    static GridSpec centered(int n, double dx) {
        const double half = 0.5 * dx * (n - 1);
        return make(n, n, dx, -half, -half);
    }

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * ny + j; }
    double x(int i) const { return x0 + i * dx; }
    double y(int j) const { return y0 + j * dy; }
    double cell_area() const { return dx * dy; }

    /// Index of the row closest to Y = 0.
    int axis_row() const;

    bool operator==(const GridSpec&) const = default;
};

template <typename T>
struct Field2D {
    GridSpec grid;
    std::vector<T> v;

    Field2D() = default;
    explicit Field2D(const GridSpec& g, T fill = T{}) : grid(g), v(g.size(), fill) {}

    T& at(int i, int j) { return v[grid.idx(i, j)]; }
    const T& at(int i, int j) const { return v[grid.idx(i, j)]; }
    std::size_t size() const { return v.size(); }
};

using ScalarField2D = Field2D<double>;
using ComplexField2D = Field2D<Complex>;

inline int GridSpec::axis_row() const {
    int best = 0;
    double dist = std::abs(y(0));
    for (int j = 1; j < ny; ++j) {
        const double d = std::abs(y(j));
        if (d < dist) {
            dist = d;
            best = j;
        }
    }
    return best;
}

inline void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
    if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

/// Sum of |psi|^2 * dx * dy over the whole grid.
double total_norm(const ComplexField2D& psi);

}  // namespace mwfzp
