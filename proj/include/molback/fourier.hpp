// fourier.hpp
// Continuous-Fourier-transform approximation on the half-offset grid via
// phase-corrected FFT, plus discrete L2 and Sobolev norms.
//
// Per axis, with x(j) = -L + (j+1/2) kappa and xi(k) = -Omega + k dxi,
//   x(j) xi(k) = L Omega - pi k - pi (j+1/2) + 2 pi j k / N + pi k / N,
// so the quadrature sum kappa (2pi)^{-1/2} sum_j f(x_j) e^{-i x_j xi_k}
// factors into a plain DFT with the per-index phases
//   pre(j)  = e^{i pi (j+1/2)} = i (-1)^j,
//   post(k) = e^{i pi k} e^{-i pi k / N},
// and the constant e^{-i L Omega} = e^{-i pi N/2} = 1 for N divisible by 4.
// The inverse uses the conjugate phases with dxi in place of kappa; the
// composition is the exact identity because kappa * dxi * N = 2 pi.
#pragma once

#include "molback/grid.hpp"

namespace molback {

SpectralField forward_ft(const RealField& f);

// Discrete inverse of forward_ft.  The imaginary residue of the output must
// stay below 1e-10 of the real part in norm; otherwise the input did not come
// from real data and a consistency error is thrown.
RealField inverse_ft(const SpectralField& F);

// kappa^{n/2}-weighted Euclidean norm (midpoint quadrature of the L2 norm).
double l2_norm(const RealField& f);

// Discrete ||(1 + |xi|^2)^{p/2} f_hat|| over the frequency grid; equals
// l2_norm(f) at p = 0 by the exact discrete Parseval identity.
double sobolev_norm(const RealField& f, double p);

double l2_distance(const RealField& a, const RealField& b);

}  // namespace molback
