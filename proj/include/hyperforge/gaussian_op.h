#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hyperforge/phase_poly.h"

namespace hyperforge {

// Z^a(s) = exp(i s q_a)
struct Zdisp {
  ModeId mode;
  double s;
  friend bool operator==(const Zdisp&, const Zdisp&) = default;
};

// X^a(s) = exp(-i s p_a)
struct Xdisp {
  ModeId mode;
  double s;
  friend bool operator==(const Xdisp&, const Xdisp&) = default;
};

// D_q^a(s) = exp(i s q_a^2 / 2)
struct ShearQ {
  ModeId mode;
  double s;
  friend bool operator==(const ShearQ&, const ShearQ&) = default;
};

// D_p^a(s) = exp(i s p_a^2 / 2)
struct ShearP {
  ModeId mode;
  double s;
  friend bool operator==(const ShearP&, const ShearP&) = default;
};

// S^a(s) = exp(-i s (p_a q_a + q_a p_a) / 2)
struct Squeeze {
  ModeId mode;
  double s;
  friend bool operator==(const Squeeze&, const Squeeze&) = default;
};

// R_a(s) = exp(i s (q_a^2 + p_a^2) / 2)
struct Rotate {
  ModeId mode;
  double s;
  friend bool operator==(const Rotate&, const Rotate&) = default;
};

// C_e(t) = exp(i t prod_{v in e} q_v). Modes are kept sorted and distinct.
struct CPhase {
  std::vector<ModeId> modes;
  double t;
  friend bool operator==(const CPhase&, const CPhase&) = default;
};

struct MeasureQ {
  ModeId mode;
  double m;
  friend bool operator==(const MeasureQ&, const MeasureQ&) = default;
};

struct MeasureP {
  ModeId mode;
  double m;
  friend bool operator==(const MeasureP&, const MeasureP&) = default;
};

using GaussianOp =
    std::variant<Zdisp, Xdisp, ShearQ, ShearP, Squeeze, Rotate, CPhase, MeasureQ, MeasureP>;

// Builds a CPhase with validated, sorted, duplicate-free modes.
CPhase make_cphase(std::vector<ModeId> modes, double t);

// Short name used in text and JSON: Z X Dq Dp S R C Mq Mp.
std::string_view op_name(const GaussianOp& op);
std::vector<ModeId> op_modes(const GaussianOp& op);
double op_param(const GaussianOp& op);

// Builds an op from its short name, its modes and its single parameter.
GaussianOp make_op(std::string_view name, std::vector<ModeId> modes, double param);

// "Dp(A,1)", "C(A,D,-2)"; parameters in shortest round-trip form.
std::string format_op(const GaussianOp& op);
GaussianOp parse_op(std::string_view text);

}  // namespace hyperforge
