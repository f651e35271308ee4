#pragma once

#include <complex>

namespace hyperforge::oracle {

// Single-mode wavefunction psi(q) = exp(alpha q^2 + beta q + gamma) with
// Re(alpha) < 0. Every single-mode Gaussian op and every phase of degree <= 2
// keeps this form, so the oracle can evaluate them in closed form.
struct GaussianWave {
  std::complex<double> alpha;
  std::complex<double> beta;
  std::complex<double> gamma;

  // Normalized real Gaussian with <q^2> = variance, centered at 0.
  static GaussianWave centered(double variance);
  // Squeezed vacuum with <q^2> = e^{2r}/2 (the zero-momentum approximant).
  static GaussianWave squeezed(double r);

  // psi <- exp(i (c2 q^2 + c1 q + c0)) psi
  GaussianWave& multiply_phase(double c2, double c1, double c0);
  // psi(q) <- psi(q - s), i.e. exp(-i s p)
  GaussianWave& displace(double s);
  // psi(q) <- e^{-s/2} psi(e^{-s} q), i.e. exp(-i s (qp+pq)/2)
  GaussianWave& squeeze(double s);
  // exp(i s p^2 / 2), through the Fourier domain
  GaussianWave& shear_p(double s);
  // psi(q) <- psi(-q), rotation by pi up to global phase
  GaussianWave& reflect();

  double norm_squared() const;
};

// <x|y> = integral of conj(x) y
std::complex<double> overlap(const GaussianWave& x, const GaussianWave& y);

}  // namespace hyperforge::oracle
