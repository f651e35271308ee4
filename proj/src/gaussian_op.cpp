#include "hyperforge/gaussian_op.h"

#include <algorithm>
#include <cmath>

#include "hyperforge/errors.h"

namespace hyperforge {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

CPhase make_cphase(std::vector<ModeId> modes, double t) {
  if (modes.empty()) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "controlled phase needs at least one mode");
  }
  std::sort(modes.begin(), modes.end());
  if (std::adjacent_find(modes.begin(), modes.end()) != modes.end()) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "controlled phase modes must be distinct");
  }
  return CPhase{std::move(modes), t};
}

std::string_view op_name(const GaussianOp& op) {
  return std::visit(overloaded{
                        [](const Zdisp&) { return std::string_view("Z"); },
                        [](const Xdisp&) { return std::string_view("X"); },
                        [](const ShearQ&) { return std::string_view("Dq"); },
                        [](const ShearP&) { return std::string_view("Dp"); },
                        [](const Squeeze&) { return std::string_view("S"); },
                        [](const Rotate&) { return std::string_view("R"); },
                        [](const CPhase&) { return std::string_view("C"); },
                        [](const MeasureQ&) { return std::string_view("Mq"); },
                        [](const MeasureP&) { return std::string_view("Mp"); },
                    },
                    op);
}

std::vector<ModeId> op_modes(const GaussianOp& op) {
  return std::visit(overloaded{
                        [](const CPhase& c) { return c.modes; },
                        [](const auto& o) { return std::vector<ModeId>{o.mode}; },
                    },
                    op);
}

double op_param(const GaussianOp& op) {
  return std::visit(overloaded{
                        [](const CPhase& c) { return c.t; },
                        [](const MeasureQ& o) { return o.m; },
                        [](const MeasureP& o) { return o.m; },
                        [](const auto& o) { return o.s; },
                    },
                    op);
}

GaussianOp make_op(std::string_view name, std::vector<ModeId> modes, double param) {
  if (!std::isfinite(param)) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "op parameter must be finite");
  }
  if (name == "C") return make_cphase(std::move(modes), param);
  if (modes.size() != 1) {
    throw HyperforgeError(ErrorCode::kMalformedInput,
                          "op '" + std::string(name) + "' takes exactly one mode");
  }
  ModeId a = modes.front();
  if (name == "Z") return Zdisp{a, param};
  if (name == "X") return Xdisp{a, param};
  if (name == "Dq") return ShearQ{a, param};
  if (name == "Dp") return ShearP{a, param};
  if (name == "S") return Squeeze{a, param};
  if (name == "R") return Rotate{a, param};
  if (name == "Mq") return MeasureQ{a, param};
  if (name == "Mp") return MeasureP{a, param};
  throw HyperforgeError(ErrorCode::kUnsupportedOp, "unknown op '" + std::string(name) + "'");
}

std::string format_op(const GaussianOp& op) {
  std::string out(op_name(op));
  out += '(';
  for (const auto& m : op_modes(op)) {
    out += m.str();
    out += ',';
  }
  out += format_double(op_param(op));
  out += ')';
  return out;
}

GaussianOp parse_op(std::string_view text) {
  text = trim(text);
  auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw HyperforgeError(ErrorCode::kMalformedInput,
                          "expected 'Name(mode,...,param)', got '" + std::string(text) + "'");
  }
  std::string_view name = trim(text.substr(0, open));
  std::string_view args = text.substr(open + 1, text.size() - open - 2);
  std::vector<std::string_view> parts;
  while (true) {
    auto comma = args.find(',');
    parts.push_back(trim(args.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    args.remove_prefix(comma + 1);
  }
  if (parts.size() < 2) {
    throw HyperforgeError(ErrorCode::kMalformedInput,
                          "op '" + std::string(name) + "' needs a mode and a parameter");
  }
  std::vector<ModeId> modes;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    try {
      modes.emplace_back(std::string(parts[i]));
    } catch (const HyperforgeError& e) {
      throw HyperforgeError(ErrorCode::kMalformedInput, e.what());
    }
  }
  return make_op(name, std::move(modes), parse_double(parts.back()));
}

}  // namespace hyperforge
