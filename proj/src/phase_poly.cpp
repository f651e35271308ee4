#include "hyperforge/phase_poly.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hyperforge/errors.h"

namespace hyperforge {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, std::string(what) + " must be finite");
  }
}

std::vector<double> binomial_row(int k) {
  std::vector<double> row(k + 1, 1.0);
  for (int j = 1; j < k; ++j) {
    row[j] = row[j - 1] * static_cast<double>(k - j + 1) / static_cast<double>(j);
  }
  return row;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw HyperforgeError(ErrorCode::kMalformedInput,
                          "cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

ModeId::ModeId(std::string label) : label_(std::move(label)) {
  if (label_.empty()) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "mode label must be nonempty");
  }
  if (!std::all_of(label_.begin(), label_.end(), valid_label_char)) {
    throw HyperforgeError(ErrorCode::kInvalidArgument,
                          "mode label '" + label_ + "' has characters outside [A-Za-z0-9_]");
  }
}

// ---- Monomial ---------------------------------------------------------------

Monomial Monomial::parse(std::string_view text) {
  Monomial m;
  text = trim(text);
  if (text.empty()) {
    throw HyperforgeError(ErrorCode::kMalformedInput, "empty monomial");
  }
  while (!text.empty()) {
    auto star = text.find('*');
    std::string_view tok = trim(text.substr(0, star));
    text = star == std::string_view::npos ? std::string_view{} : text.substr(star + 1);
    int exp = 1;
    auto caret = tok.find('^');
    std::string_view label = trim(tok.substr(0, caret));
    if (caret != std::string_view::npos) {
      std::string_view e = trim(tok.substr(caret + 1));
      auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), exp);
      if (ec != std::errc() || ptr != e.data() + e.size() || exp < 1) {
        throw HyperforgeError(ErrorCode::kMalformedInput,
                              "bad exponent in monomial factor '" + std::string(tok) + "'");
      }
    }
    ModeId id{std::string(label)};
    m = m * Monomial::power(id, exp);
  }
  return m;
}

Monomial Monomial::multilinear(std::span<const ModeId> modes) {
  Monomial m;
  for (const auto& id : modes) {
    if (m.contains(id)) {
      throw HyperforgeError(ErrorCode::kInvalidArgument,
                            "mode '" + id.str() + "' repeated in multilinear monomial");
    }
    m = m * Monomial::power(id, 1);
  }
  return m;
}

Monomial Monomial::power(const ModeId& mode, int exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(mode, exponent);
  return m;
}

int Monomial::exponent(const ModeId& mode) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), mode,
                             [](const Factor& f, const ModeId& id) { return f.first < id; });
  return (it != factors_.end() && it->first == mode) ? it->second : 0;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [id, e] : factors_) d += e;
  return d;
}

bool Monomial::is_multilinear() const {
  return !factors_.empty() &&
         std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.second == 1; });
}

std::vector<ModeId> Monomial::modes() const {
  std::vector<ModeId> out;
  out.reserve(factors_.size());
  for (const auto& [id, e] : factors_) out.push_back(id);
  return out;
}

Monomial Monomial::with_exponent(const ModeId& mode, int exponent) const {
  Monomial m = *this;
  auto it = std::lower_bound(m.factors_.begin(), m.factors_.end(), mode,
                             [](const Factor& f, const ModeId& id) { return f.first < id; });
  bool present = it != m.factors_.end() && it->first == mode;
  if (exponent <= 0) {
    if (present) m.factors_.erase(it);
  } else if (present) {
    it->second = exponent;
  } else {
    m.factors_.insert(it, Factor{mode, exponent});
  }
  return m;
}

Monomial operator*(const Monomial& x, const Monomial& y) {
  Monomial out;
  out.factors_.reserve(x.factors_.size() + y.factors_.size());
  auto i = x.factors_.begin();
  auto j = y.factors_.begin();
  while (i != x.factors_.end() || j != y.factors_.end()) {
    if (j == y.factors_.end() || (i != x.factors_.end() && i->first < j->first)) {
      out.factors_.push_back(*i++);
    } else if (i == x.factors_.end() || j->first < i->first) {
      out.factors_.push_back(*j++);
    } else {
      out.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

std::string Monomial::to_string() const {
  std::string s;
  for (const auto& [id, e] : factors_) {
    if (!s.empty()) s += '*';
    s += id.str();
    s += '^';
    s += std::to_string(e);
  }
  return s;
}

// ---- PhasePolynomial -----------------------------------------------------------

PhasePolynomial::PhasePolynomial(double prune_threshold) : prune_(prune_threshold) {
  if (!(prune_threshold >= 0.0)) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "prune threshold must be >= 0");
  }
}

PhasePolynomial PhasePolynomial::from_terms(
    std::initializer_list<std::pair<std::string_view, double>> terms, double constant) {
  PhasePolynomial f;
  for (const auto& [text, c] : terms) f.add_term(Monomial::parse(text), c);
  f.add_constant(constant);
  return f;
}

double PhasePolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

int PhasePolynomial::degree_in(const ModeId& mode) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(mode));
  return d;
}

int PhasePolynomial::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::vector<ModeId> PhasePolynomial::modes() const {
  std::vector<ModeId> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [id, e] : m.factors()) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PhasePolynomial& PhasePolynomial::add_term(const Monomial& m, double coefficient) {
  require_finite(coefficient, "coefficient");
  if (m.empty()) return add_constant(coefficient);
  auto [it, inserted] = terms_.try_emplace(m, 0.0);
  it->second += coefficient;
  if (std::abs(it->second) <= prune_) terms_.erase(it);
  return *this;
}

PhasePolynomial& PhasePolynomial::add_constant(double c) {
  require_finite(c, "constant");
  constant_ += c;
  return *this;
}

PhasePolynomial& PhasePolynomial::operator+=(const PhasePolynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  constant_ += other.constant_;
  return *this;
}

PhasePolynomial& PhasePolynomial::operator-=(const PhasePolynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  constant_ -= other.constant_;
  return *this;
}

PhasePolynomial& PhasePolynomial::operator*=(double factor) {
  require_finite(factor, "scale factor");
  for (auto& [m, c] : terms_) c *= factor;
  constant_ *= factor;
  canonicalize();
  return *this;
}

PhasePolynomial operator*(const PhasePolynomial& x, const PhasePolynomial& y) {
  PhasePolynomial out(std::max(x.prune_, y.prune_));
  // Accumulate unpruned so that intermediate partial sums cannot be dropped.
  std::map<Monomial, double> acc;
  for (const auto& [mx, cx] : x.terms_) {
    for (const auto& [my, cy] : y.terms_) acc[mx * my] += cx * cy;
    if (y.constant_ != 0.0) acc[mx] += cx * y.constant_;
  }
  if (x.constant_ != 0.0) {
    for (const auto& [my, cy] : y.terms_) acc[my] += x.constant_ * cy;
  }
  out.constant_ = x.constant_ * y.constant_;
  for (const auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

void PhasePolynomial::canonicalize() {
  std::erase_if(terms_, [this](const auto& kv) { return std::abs(kv.second) <= prune_; });
}

std::string PhasePolynomial::to_text() const {
  std::string out = "const " + format_double(constant_) + "\n";
  for (const auto& [m, c] : terms_) {
    out += format_double(c);
    out += " * ";
    out += m.to_string();
    out += '\n';
  }
  return out;
}

PhasePolynomial PhasePolynomial::parse_text(std::string_view text) {
  PhasePolynomial f;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (line.starts_with("const")) {
      f.add_constant(parse_double(line.substr(5)));
      continue;
    }
    auto star = line.find('*');
    if (star == std::string_view::npos) {
      throw HyperforgeError(ErrorCode::kMalformedInput,
                            "line " + std::to_string(line_no) + ": expected '<coeff> * <monomial>'");
    }
    double c = parse_double(line.substr(0, star));
    f.add_term(Monomial::parse(line.substr(star + 1)), c);
  }
  return f;
}

// ---- free operations -----------------------------------------------------------

PhasePolynomial add_term(PhasePolynomial f, const Monomial& m, double t) {
  f.add_term(m, t);
  return f;
}

PhasePolynomial substitute_affine(const PhasePolynomial& f, const ModeId& a, double alpha,
                                  double beta) {
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
  if (alpha == 1.0 && beta == 0.0) return f;

  std::map<Monomial, double> acc;
  double constant = f.constant();
  for (const auto& [m, c] : f.terms()) {
    int k = m.exponent(a);
    if (k == 0) {
      acc[m] += c;
      continue;
    }
    Monomial rest = m.without(a);
    if (beta == 0.0) {
      acc[m] += c * std::pow(alpha, k);
      continue;
    }
    // c * rest * sum_j C(k,j) alpha^j beta^(k-j) q_a^j
    auto binom = binomial_row(k);
    for (int j = 0; j <= k; ++j) {
      double coeff = c * binom[j] * std::pow(alpha, j) * std::pow(beta, k - j);
      if (coeff == 0.0) continue;
      Monomial mj = rest.with_exponent(a, j);
      if (mj.empty()) {
        constant += coeff;
      } else {
        acc[mj] += coeff;
      }
    }
  }
  PhasePolynomial out(f.prune_threshold());
  for (const auto& [m, c] : acc) out.add_term(m, c);
  out.add_constant(constant);
  return out;
}

LinearSplit partial_in(const PhasePolynomial& f, const ModeId& a) {
  LinearSplit split{PhasePolynomial(f.prune_threshold()), PhasePolynomial(f.prune_threshold()), 0};
  split.g.add_constant(f.constant());
  for (const auto& [m, c] : f.terms()) {
    int k = m.exponent(a);
    split.degree = std::max(split.degree, k);
    if (k == 0) {
      split.g.add_term(m, c);
    } else if (k == 1) {
      split.h.add_term(m.without(a), c);
    }
  }
  return split;
}

PhasePolynomial square_half(const PhasePolynomial& h, double s) {
  require_finite(s, "shear strength");
  if (s == 0.0) return PhasePolynomial(h.prune_threshold());
  return (h * h) * (0.5 * s);
}

bool poly_equal(const PhasePolynomial& f, const PhasePolynomial& g, double tol) {
  if (tol < 0.0) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "tolerance must be >= 0");
  }
  auto i = f.terms().begin();
  auto j = g.terms().begin();
  while (i != f.terms().end() || j != g.terms().end()) {
    double diff;
    if (j == g.terms().end() || (i != f.terms().end() && i->first < j->first)) {
      diff = (i++)->second;
    } else if (i == f.terms().end() || j->first < i->first) {
      diff = (j++)->second;
    } else {
      diff = (i++)->second - (j++)->second;
    }
    if (std::abs(diff) > tol) return false;
  }
  double dc = std::remainder(f.constant() - g.constant(), 2.0 * std::numbers::pi);
  return std::abs(dc) <= tol;
}

}  // namespace hyperforge
