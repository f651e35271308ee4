#pragma once

#include <vector>

#include "hyperforge/gaussian_op.h"

namespace hyperforge {

// Single-mode phase-space matrix acting on (q, p). Convention: an operator U
// is represented by M with U^dagger x U = M x, so M_{UV} = M_U M_V.
struct SymplecticMatrix2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static SymplecticMatrix2 identity() { return {}; }
  static SymplecticMatrix2 shear_q(double t) { return {1.0, 0.0, t, 1.0}; }
  static SymplecticMatrix2 shear_p(double t) { return {1.0, -t, 0.0, 1.0}; }
  static SymplecticMatrix2 squeeze(double r);
  static SymplecticMatrix2 rotation(double s);

  double determinant() const { return a * d - b * c; }
  bool is_symplectic(double tol = 1e-12) const;

  friend SymplecticMatrix2 operator*(const SymplecticMatrix2& x, const SymplecticMatrix2& y);
  friend SymplecticMatrix2 operator-(const SymplecticMatrix2& x) { return {-x.a, -x.b, -x.c, -x.d}; }
  friend bool operator==(const SymplecticMatrix2&, const SymplecticMatrix2&) = default;
};

double max_abs_diff(const SymplecticMatrix2& x, const SymplecticMatrix2& y);

// Linear part of a single-mode op. Displacements map to the identity;
// CPhase and measurements throw UnsupportedOp.
SymplecticMatrix2 matrix_of(const GaussianOp& op);

// Matrix of a sequence given in application order (first op first).
SymplecticMatrix2 matrix_of(const std::vector<GaussianOp>& ops);

struct RotationFactors {
  double t = 0.0;  // shear strength, tan s
  double r = 0.0;  // squeezing, ln(1/cos s)
  bool flip = false;  // a Rotate(pi) is factored out first (cos s < 0)
};

// R(s) = [R(pi)] D_p(t) S(r) D_q(t). Throws FourierUnsupported near odd
// multiples of pi/2.
RotationFactors rotation_decompose(double s);

// Application-order sequence for M on `mode`: [Rotate(pi)] ShearQ(v),
// Squeeze(r), ShearP(u), with zero-strength factors omitted. Throws
// DegeneratePivot when |M.d| <= 1e-9 and InvalidArgument when M is not
// symplectic.
std::vector<GaussianOp> decompose_single_mode_symplectic(const SymplecticMatrix2& m,
                                                         const ModeId& mode);

}  // namespace hyperforge
