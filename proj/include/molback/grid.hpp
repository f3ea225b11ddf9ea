// grid.hpp
// Half-offset uniform grids on [-L, L]^n with the paired frequency grid, and
// the sampled real/spectral field containers.
#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <type_traits>
#include <vector>

namespace molback {

// Nodes x(i) = -L + (i + 1/2) kappa, i = 0..N-1, kappa = 2L/N.
// Frequency nodes xi(k) = -Omega + k * (2 Omega / N), Omega = pi N / (2 L),
// so that kappa * N = 2L and Omega * kappa = pi exactly.
struct GridSpec {
    int n_dims = 2;
    double half_width = 10.0;  // L
    int points_per_axis = 256; // N, power of two

    double spacing() const { return 2.0 * half_width / points_per_axis; }
    double freq_half_width() const {
        return std::numbers::pi * points_per_axis / (2.0 * half_width);
    }
    double freq_spacing() const { return std::numbers::pi / half_width; }
    double node(int i) const { return -half_width + (i + 0.5) * spacing(); }
    double freq_node(int k) const { return -freq_half_width() + k * freq_spacing(); }

    std::size_t total_points() const {
        std::size_t n = static_cast<std::size_t>(points_per_axis);
        return n_dims == 1 ? n : n * n;
    }

    bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int n_dims, double half_width, int points_per_axis);

// Row-major samples, first axis slowest: values[i1 * N + i2] at (x(i1), x(i2)).
struct RealField {
    GridSpec grid;
    std::vector<double> values;

    static RealField zeros(const GridSpec& g) {
        return RealField{g, std::vector<double>(g.total_points(), 0.0)};
    }

    template <class F>
    static RealField sample(const GridSpec& g, F&& f) {
        RealField out = zeros(g);
        const int n = g.points_per_axis;
        if constexpr (std::is_invocable_r_v<double, F, double>) {
            for (int i = 0; i < n; ++i) out.values[i] = f(g.node(i));
        } else {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    out.values[static_cast<std::size_t>(i) * n + j] = f(g.node(i), g.node(j));
        }
        return out;
    }
};

// Discrete approximation of the continuous transform under the symmetric
// (2 pi)^{-n/2} convention, sampled at the frequency nodes; same layout.
struct SpectralField {
    GridSpec grid;
    std::vector<std::complex<double>> coeffs;

    static SpectralField zeros(const GridSpec& g) {
        return SpectralField{g, std::vector<std::complex<double>>(g.total_points())};
    }
};

}  // namespace molback
