#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "hyperforge/gaussian_op.h"
#include "hyperforge/oracle/kernels.h"
#include "hyperforge/phase_poly.h"

namespace hyperforge::oracle {

// Quadrature convention used throughout the oracle:
//   q = (a + a^dagger) / sqrt(2),  p = (a - a^dagger) / (i sqrt(2)),  [q, p] = i.
// Finite-squeezing stand-in for a zero-momentum eigenstate: the vacuum
// squeezed so that <p^2> = e^{-2r}/2.

struct FockConfig {
  int cutoff = 20;
  std::vector<ModeId> modes;
  std::map<ModeId, double> squeezing;  // per-mode r; missing modes use default_squeezing
  double default_squeezing = 2.0;
  std::size_t max_amplitudes = 10'000'000;
  double leakage_budget = 1e-4;
  bool parallel = true;  // OpenMP kernels; false selects the serial reference

  double r(const ModeId& mode) const;
  std::size_t index_of(const ModeId& mode) const;  // throws UnknownMode
  TensorShape shape() const;                       // throws DimensionOverflow
  void validate() const;
};

struct FockState {
  FockConfig config;
  Eigen::VectorXcd amplitudes;
  double leakage = 0.0;  // largest norm deficit seen so far

  double norm() const { return amplitudes.norm(); }
};

enum class QuadKind { kQ, kP };

struct QuadratureOperator {
  ModeId mode;
  QuadKind kind;
  Eigen::MatrixXcd matrix;
};

QuadratureOperator quadrature_operator(const ModeId& mode, QuadKind kind, int cutoff);
Eigen::MatrixXcd annihilation(int dim);
Eigen::MatrixXcd position(int dim);
Eigen::MatrixXcd momentum(int dim);

FockState prepare_squeezed_vacuum(const FockConfig& cfg);

// exp(i f(q)) with each q replaced by the truncated position matrix; exact
// in the joint eigenbasis of the truncated positions.
FockState apply_phase_unitary(FockState st, const PhasePolynomial& f);

// Numerical action of a primitive. Measurements apply a Gaussian window of
// width `window_sigma` in the measured quadrature and renormalize; the mode
// stays in the register.
FockState apply_gaussian_numeric(FockState st, const GaussianOp& op, double window_sigma = 0.05);

// exp(i lambda q_a p_b), a != b.
FockState apply_qp_coupling(FockState st, const ModeId& a, const ModeId& b, double lambda);

// |<x|y>|^2 / (|x|^2 |y|^2)
double fidelity(const FockState& x, const FockState& y);

// <pred| rho_rest |pred> where rho_rest traces `mode` out of `actual` and
// `pred` lives on the remaining modes in the same order. Both normalized.
double reduced_fidelity(const FockState& actual, const ModeId& mode, const FockState& pred);

// One factor of an ordered quadrature product, e.g. {A, kP, 1}.
struct QuadFactor {
  ModeId mode;
  QuadKind kind;
  int power = 1;
};

// <psi| O_1 O_2 ... O_k |psi> / <psi|psi> for the written product.
std::complex<double> moments(const FockState& st, const std::vector<QuadFactor>& product);

}  // namespace hyperforge::oracle
