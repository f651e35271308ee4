#include "hyperforge/decompose.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperforge/engine.h"
#include "hyperforge/errors.h"

namespace hyperforge {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kPivotTolerance = 1e-9;

}  // namespace

SymplecticMatrix2 SymplecticMatrix2::squeeze(double r) { return {std::exp(r), 0.0, 0.0, std::exp(-r)}; }

SymplecticMatrix2 SymplecticMatrix2::rotation(double s) {
  double c = std::cos(s);
  double sn = std::sin(s);
  return {c, -sn, sn, c};
}

bool SymplecticMatrix2::is_symplectic(double tol) const { return std::abs(determinant() - 1.0) <= tol; }

SymplecticMatrix2 operator*(const SymplecticMatrix2& x, const SymplecticMatrix2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

double max_abs_diff(const SymplecticMatrix2& x, const SymplecticMatrix2& y) {
  return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c),
                   std::abs(x.d - y.d)});
}

SymplecticMatrix2 matrix_of(const GaussianOp& op) {
  return std::visit(
      overloaded{
          [](const ShearQ& o) { return SymplecticMatrix2::shear_q(o.s); },
          [](const ShearP& o) { return SymplecticMatrix2::shear_p(o.s); },
          [](const Squeeze& o) { return SymplecticMatrix2::squeeze(o.s); },
          [](const Rotate& o) { return SymplecticMatrix2::rotation(o.s); },
          [](const Zdisp&) { return SymplecticMatrix2::identity(); },
          [](const Xdisp&) { return SymplecticMatrix2::identity(); },
          [&](const auto&) -> SymplecticMatrix2 {
            throw HyperforgeError(ErrorCode::kUnsupportedOp,
                                  "'" + std::string(op_name(op)) + "' has no single-mode matrix");
          },
      },
      op);
}

SymplecticMatrix2 matrix_of(const std::vector<GaussianOp>& ops) {
  SymplecticMatrix2 m;
  for (const auto& op : ops) m = matrix_of(op) * m;
  return m;
}

RotationFactors rotation_decompose(double s) {
  double k = std::round(s / std::numbers::pi - 0.5);
  if (std::abs(s - (k + 0.5) * std::numbers::pi) <= kAngleTolerance) {
    throw HyperforgeError(ErrorCode::kFourierUnsupported,
                          "rotation by an odd multiple of pi/2 has no shear-squeeze form");
  }
  RotationFactors f;
  double rest = s;
  if (std::cos(s) < 0.0) {
    f.flip = true;
    rest = s - std::numbers::pi;
  }
  f.t = std::tan(rest);
  f.r = -std::log(std::cos(rest));
  return f;
}

std::vector<GaussianOp> decompose_single_mode_symplectic(const SymplecticMatrix2& m,
                                                         const ModeId& mode) {
  if (!m.is_symplectic(1e-9)) {
    throw HyperforgeError(ErrorCode::kInvalidArgument,
                          "matrix determinant " + format_double(m.determinant()) + " is not 1");
  }
  std::vector<GaussianOp> out;
  SymplecticMatrix2 work = m;
  if (work.d < -kPivotTolerance) {
    out.push_back(Rotate{mode, std::numbers::pi});
    work = -work;
  }
  if (std::abs(work.d) <= kPivotTolerance) {
    throw HyperforgeError(ErrorCode::kDegeneratePivot,
                          "pivot " + format_double(work.d) + " too small; needs a quadrature swap");
  }
  // D_p(u) S(r) D_q(v) = [[e^r - u v e^-r, -u e^-r], [v e^-r, e^-r]]
  double r = -std::log(work.d);
  double v = work.c / work.d;
  double u = -work.b / work.d;
  if (v != 0.0) out.push_back(ShearQ{mode, v});
  if (r != 0.0) out.push_back(Squeeze{mode, r});
  if (u != 0.0) out.push_back(ShearP{mode, u});
  return out;
}

}  // namespace hyperforge
