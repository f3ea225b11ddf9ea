#include "molback/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace molback {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 complex FFT, kernel e^{sign * 2 pi i j k / N}.
void fft_radix2(cplx* a, std::size_t n, int sign, const std::vector<cplx>& roots) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx w = roots[k * stride];
                if (sign > 0) w = std::conj(w);
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

struct AxisPlan {
    int n = 0;
    std::vector<cplx> roots;      // e^{-2 pi i k / N}, k = 0..N/2-1
    std::vector<cplx> pre_fwd;    // i (-1)^j
    std::vector<cplx> post_fwd;   // (-1)^k e^{-i pi k / N}
    std::vector<cplx> pre_inv;    // (-1)^k e^{+i pi k / N}
    std::vector<cplx> post_inv;   // -i (-1)^j

    explicit AxisPlan(int n_axis) : n(n_axis) {
        roots.resize(n / 2);
        for (int k = 0; k < n / 2; ++k) roots[k] = std::polar(1.0, -2.0 * kPi * k / n);
        pre_fwd.resize(n);
        post_fwd.resize(n);
        pre_inv.resize(n);
        post_inv.resize(n);
        for (int j = 0; j < n; ++j) {
            const double par = (j % 2 == 0) ? 1.0 : -1.0;
            pre_fwd[j] = cplx(0.0, par);
            post_inv[j] = cplx(0.0, -par);
        }
        for (int k = 0; k < n; ++k) {
            const double par = (k % 2 == 0) ? 1.0 : -1.0;
            const cplx tw = std::polar(1.0, -kPi * k / n);
            post_fwd[k] = par * tw;
            pre_inv[k] = par * std::conj(tw);
        }
    }

    // out may alias in
    void forward_line(const cplx* in, cplx* out, std::vector<cplx>& scratch, double scale) const {
        for (int j = 0; j < n; ++j) scratch[j] = in[j] * pre_fwd[j];
        fft_radix2(scratch.data(), n, -1, roots);
        for (int k = 0; k < n; ++k) out[k] = scratch[k] * post_fwd[k] * scale;
    }

    void inverse_line(const cplx* in, cplx* out, std::vector<cplx>& scratch, double scale) const {
        for (int k = 0; k < n; ++k) scratch[k] = in[k] * pre_inv[k];
        fft_radix2(scratch.data(), n, +1, roots);
        for (int j = 0; j < n; ++j) out[j] = scratch[j] * post_inv[j] * scale;
    }
};

// Applies the per-axis transform along every line of each dimension.
template <class LineOp>
void transform_all_axes(std::vector<cplx>& data, int n_dims, int n, LineOp&& line) {
    std::vector<cplx> in_buf(n), out_buf(n), scratch(n);
    if (n_dims == 1) {
        line(data.data(), data.data(), scratch);
        return;
    }
    // axis 1 (contiguous rows)
    for (int i = 0; i < n; ++i)
        line(data.data() + static_cast<std::size_t>(i) * n,
             data.data() + static_cast<std::size_t>(i) * n, scratch);
    // axis 0 (strided columns)
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) in_buf[i] = data[static_cast<std::size_t>(i) * n + j];
        line(in_buf.data(), out_buf.data(), scratch);
        for (int i = 0; i < n; ++i) data[static_cast<std::size_t>(i) * n + j] = out_buf[i];
    }
}

double vec_norm(const std::vector<cplx>& v, bool imag_part) {
    double s = 0.0;
    for (const cplx& z : v) {
        const double c = imag_part ? z.imag() : z.real();
        s += c * c;
    }
    return std::sqrt(s);
}

}  // namespace

GridSpec make_grid(int n_dims, double half_width, int points_per_axis) {
    if (n_dims != 1 && n_dims != 2)
        throw std::domain_error("make_grid: n_dims must be 1 or 2");
    if (!(std::isfinite(half_width) && half_width > 0.0))
        throw std::domain_error("make_grid: half-width L must be positive");
    if (points_per_axis < 8 || !is_pow2(points_per_axis))
        throw std::domain_error("make_grid: N must be a power of two >= 8");
    return GridSpec{n_dims, half_width, points_per_axis};
}

SpectralField forward_ft(const RealField& f) {
    const GridSpec& g = f.grid;
    const int n = g.points_per_axis;
    if (f.values.size() != g.total_points())
        throw std::domain_error("forward_ft: value count does not match grid");
    for (double v : f.values)
        if (!std::isfinite(v)) throw std::domain_error("forward_ft: field must be finite");

    AxisPlan plan(n);
    const double scale = g.spacing() / std::sqrt(2.0 * kPi);
    SpectralField out = SpectralField::zeros(g);
    for (std::size_t i = 0; i < f.values.size(); ++i) out.coeffs[i] = f.values[i];
    transform_all_axes(out.coeffs, g.n_dims, n, [&](const cplx* in, cplx* o, std::vector<cplx>& s) {
        plan.forward_line(in, o, s, scale);
    });
    return out;
}

RealField inverse_ft(const SpectralField& F) {
    const GridSpec& g = F.grid;
    const int n = g.points_per_axis;
    if (F.coeffs.size() != g.total_points())
        throw std::domain_error("inverse_ft: coefficient count does not match grid");
    for (const cplx& z : F.coeffs)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::domain_error("inverse_ft: field must be finite");

    AxisPlan plan(n);
    const double scale = g.freq_spacing() / std::sqrt(2.0 * kPi);
    std::vector<cplx> work = F.coeffs;
    transform_all_axes(work, g.n_dims, n, [&](const cplx* in, cplx* o, std::vector<cplx>& s) {
        plan.inverse_line(in, o, s, scale);
    });

    const double re = vec_norm(work, false);
    const double im = vec_norm(work, true);
    if (im > 1e-10 * std::max(re, 1e-300))
        throw std::runtime_error(
            "inverse_ft: imaginary residue " + std::to_string(im) +
            " exceeds 1e-10 of the real part; input is not the transform of real data");

    RealField out = RealField::zeros(g);
    for (std::size_t i = 0; i < work.size(); ++i) out.values[i] = work[i].real();
    return out;
}

double l2_norm(const RealField& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    const double kappa = f.grid.spacing();
    const double measure = f.grid.n_dims == 1 ? kappa : kappa * kappa;
    return std::sqrt(measure * s);
}

double sobolev_norm(const RealField& f, double p) {
    if (!(std::isfinite(p) && p >= 0.0))
        throw std::domain_error("sobolev_norm: order p must be >= 0");
    const SpectralField F = forward_ft(f);
    const GridSpec& g = f.grid;
    const int n = g.points_per_axis;
    double s = 0.0;
    if (g.n_dims == 1) {
        for (int k = 0; k < n; ++k) {
            const double xi = g.freq_node(k);
            s += std::pow(1.0 + xi * xi, p) * std::norm(F.coeffs[k]);
        }
    } else {
        for (int k1 = 0; k1 < n; ++k1) {
            const double a = g.freq_node(k1);
            for (int k2 = 0; k2 < n; ++k2) {
                const double b = g.freq_node(k2);
                s += std::pow(1.0 + a * a + b * b, p) *
                     std::norm(F.coeffs[static_cast<std::size_t>(k1) * n + k2]);
            }
        }
    }
    const double dxi = g.freq_spacing();
    const double measure = g.n_dims == 1 ? dxi : dxi * dxi;
    return std::sqrt(measure * s);
}

double l2_distance(const RealField& a, const RealField& b) {
    if (!(a.grid == b.grid))
        throw std::domain_error("l2_distance: fields live on different grids");
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        s += d * d;
    }
    const double kappa = a.grid.spacing();
    const double measure = a.grid.n_dims == 1 ? kappa : kappa * kappa;
    return std::sqrt(measure * s);
}

}  // namespace molback
