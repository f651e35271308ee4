#pragma once

#include <optional>
#include <string_view>

#include "hyperforge/gaussian_op.h"
#include "hyperforge/oracle/fock.h"
#include "hyperforge/phase_poly.h"

namespace hyperforge::oracle {

enum class Backend {
  // Position-conditioned closed form: every mode but the acted one is a
  // quadrature variable; the acted mode is a complex Gaussian
  // wavefunction. No Fock truncation, so it holds at any squeezing.
  kConditioned,
  // Dense truncated Fock tensor of the whole register.
  kDense,
};

std::string_view backend_name(Backend b);

struct VerifyOptions {
  Backend backend = Backend::kConditioned;
  // Squeeze(a, s) maps the r_a approximant onto the r_a + s one; compare
  // against that rather than against the original r_a.
  bool track_squeezing = true;
  double window_sigma = 0.05;  // homodyne window, extrapolated to zero
  std::size_t nodes = 64;      // Gauss-Hermite nodes per dimension
};

struct VerifyResult {
  double fidelity = 0.0;
  double leakage = 0.0;         // dense backend only
  double error_estimate = 0.0;  // quadrature refinement or window extrapolation spread
  Backend backend = Backend::kConditioned;
};

// |<predict|actual>|^2 where actual = op exp(i f_before) |sqz> and
// predict = exp(i f_after) |sqz'>, both normalized. For MeasureQ the
// measured mode is traced out and the result is the window -> 0 limit.
VerifyResult verify_rule(const GaussianOp& op, const PhasePolynomial& f_before,
                         const PhasePolynomial& f_after, const FockConfig& cfg,
                         const VerifyOptions& opts = {});

// Closed-form expectation where one exists: exp(-s^2 e^{-2 r_a} / 2) for
// Xdisp, 1 for the exact rules.
std::optional<double> formula_prediction(const GaussianOp& op, const FockConfig& cfg,
                                         const VerifyOptions& opts = {});

enum class CubicForm {
  kOuter,     // two modes A, C
  kExpanded,  // three modes A, B, C
};

// Applies the cubic-phase factor sequence to test_state and compares with
// exp(i gamma q_A^3) applied directly.
double verify_cubic_identity(const FockState& test_state, CubicForm form = CubicForm::kOuter,
                             double gamma = 1.0);

}  // namespace hyperforge::oracle
