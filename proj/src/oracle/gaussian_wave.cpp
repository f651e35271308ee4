#include "hyperforge/oracle/gaussian_wave.h"

#include <cmath>
#include <numbers>

#include "hyperforge/errors.h"

namespace hyperforge::oracle {

namespace {

using cplx = std::complex<double>;
const cplx kI{0.0, 1.0};

// Fourier pair with psi~(p) = (2 pi)^{-1/2} integral exp(-i p q) psi(q) dq.
void transform(cplx& a, cplx& b, cplx& g, double sign) {
  cplx na = 1.0 / (4.0 * a);
  cplx nb = sign * kI * b / (2.0 * a);
  cplx ng = g - b * b / (4.0 * a) - 0.5 * std::log(-2.0 * a);
  a = na;
  b = nb;
  g = ng;
}

}  // namespace

GaussianWave GaussianWave::centered(double variance) {
  if (!(variance > 0.0)) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "variance must be positive");
  }
  return GaussianWave{-1.0 / (4.0 * variance), 0.0,
                      -0.25 * std::log(2.0 * std::numbers::pi * variance)};
}

GaussianWave GaussianWave::squeezed(double r) { return centered(std::exp(2.0 * r) / 2.0); }

GaussianWave& GaussianWave::multiply_phase(double c2, double c1, double c0) {
  alpha += kI * c2;
  beta += kI * c1;
  gamma += kI * c0;
  return *this;
}

GaussianWave& GaussianWave::displace(double s) {
  gamma += alpha * s * s - beta * s;
  beta -= 2.0 * alpha * s;
  return *this;
}

GaussianWave& GaussianWave::squeeze(double s) {
  alpha *= std::exp(-2.0 * s);
  beta *= std::exp(-s);
  gamma -= s / 2.0;
  return *this;
}

GaussianWave& GaussianWave::shear_p(double s) {
  transform(alpha, beta, gamma, 1.0);
  alpha += kI * (s / 2.0);
  transform(alpha, beta, gamma, -1.0);
  return *this;
}

GaussianWave& GaussianWave::reflect() {
  beta = -beta;
  return *this;
}

double GaussianWave::norm_squared() const { return std::abs(overlap(*this, *this)); }

std::complex<double> overlap(const GaussianWave& x, const GaussianWave& y) {
  cplx a = std::conj(x.alpha) + y.alpha;
  cplx b = std::conj(x.beta) + y.beta;
  cplx c = std::conj(x.gamma) + y.gamma;
  return std::sqrt(std::numbers::pi / (-a)) * std::exp(c - b * b / (4.0 * a));
}

}  // namespace hyperforge::oracle
