#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hyperforge {

// Label of a bosonic mode (a hypergraph vertex). Nonempty; restricted to
// [A-Za-z0-9_] so that it survives every text format unquoted.
class ModeId {
 public:
  explicit ModeId(std::string label);

  const std::string& str() const { return label_; }

  friend auto operator<=>(const ModeId&, const ModeId&) = default;
  friend bool operator==(const ModeId&, const ModeId&) = default;

 private:
  std::string label_;
};

namespace literals {
inline ModeId operator""_m(const char* s, std::size_t n) { return ModeId(std::string(s, n)); }
}  // namespace literals

// Product of position quadratures, q_A^k_A q_B^k_B ... with every stored
// exponent >= 1. Factors are kept sorted by label, which makes the defaulted
// comparison a lexicographic order on (label, exponent) sequences.
class Monomial {
 public:
  using Factor = std::pair<ModeId, int>;

  // The empty monomial is the multiplicative unit; PhasePolynomial never
  // stores it as a term (it folds into the constant).
  Monomial() = default;

  // "A*B^2", "A^1*B^1*C^1". Whitespace around tokens is ignored.
  static Monomial parse(std::string_view text);
  static Monomial multilinear(std::span<const ModeId> modes);
  static Monomial power(const ModeId& mode, int exponent);

  const std::vector<Factor>& factors() const { return factors_; }
  int exponent(const ModeId& mode) const;
  int degree() const;
  bool empty() const { return factors_.empty(); }
  bool is_multilinear() const;
  bool contains(const ModeId& mode) const { return exponent(mode) > 0; }
  std::vector<ModeId> modes() const;

  // Copy with the exponent of `mode` replaced; 0 removes the factor.
  Monomial with_exponent(const ModeId& mode, int exponent) const;
  Monomial without(const ModeId& mode) const { return with_exponent(mode, 0); }

  friend Monomial operator*(const Monomial& x, const Monomial& y);

  // Canonical text, always with explicit exponents: "A^1*B^2".
  std::string to_string() const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

// Real polynomial f(q_1..q_n) standing for the unitary exp(i f). Terms whose
// coefficient falls below the prune threshold are dropped on every update.
// The constant is the accumulated global phase; it is stored as-is (it may be
// squared when a polynomial serves as an adjacency sum) and only compared
// modulo 2*pi.
class PhasePolynomial {
 public:
  static constexpr double kDefaultPrune = 1e-12;

  PhasePolynomial() = default;
  explicit PhasePolynomial(double prune_threshold);

  // Convenience for literals: {{"A*B*C", 1.0}, {"A*D", 2.0}}.
  static PhasePolynomial from_terms(
      std::initializer_list<std::pair<std::string_view, double>> terms, double constant = 0.0);

  const std::map<Monomial, double>& terms() const { return terms_; }
  double constant() const { return constant_; }
  double prune_threshold() const { return prune_; }
  double coefficient(const Monomial& m) const;
  std::size_t size() const { return terms_.size(); }
  bool has_terms() const { return !terms_.empty(); }
  // No terms and a zero constant.
  bool is_zero() const { return terms_.empty() && constant_ == 0.0; }

  int degree_in(const ModeId& mode) const;
  int total_degree() const;
  bool mentions(const ModeId& mode) const { return degree_in(mode) > 0; }
  std::vector<ModeId> modes() const;

  PhasePolynomial& add_term(const Monomial& m, double coefficient);
  PhasePolynomial& add_constant(double c);
  PhasePolynomial& operator+=(const PhasePolynomial& other);
  PhasePolynomial& operator-=(const PhasePolynomial& other);
  PhasePolynomial& operator*=(double factor);

  friend PhasePolynomial operator+(PhasePolynomial x, const PhasePolynomial& y) { return x += y; }
  friend PhasePolynomial operator-(PhasePolynomial x, const PhasePolynomial& y) { return x -= y; }
  friend PhasePolynomial operator*(PhasePolynomial x, double k) { return x *= k; }
  friend PhasePolynomial operator*(const PhasePolynomial& x, const PhasePolynomial& y);

  // Re-applies the prune threshold. Idempotent.
  void canonicalize();

  // Line-oriented text: "const <c>" followed by "<coeff> * A^1*B^2" lines in
  // canonical order. Doubles use shortest round-trip formatting, so
  // parse_text(to_text()) reproduces the polynomial bit for bit.
  std::string to_text() const;
  static PhasePolynomial parse_text(std::string_view text);

  friend bool operator==(const PhasePolynomial&, const PhasePolynomial&) = default;

 private:
  std::map<Monomial, double> terms_;
  double constant_ = 0.0;
  double prune_ = kDefaultPrune;
};

PhasePolynomial add_term(PhasePolynomial f, const Monomial& m, double t);

// Replaces q_a by (alpha * q_a + beta) and re-expands.
PhasePolynomial substitute_affine(const PhasePolynomial& f, const ModeId& a, double alpha,
                                  double beta);

// Splits f = q_a * h + g for the part of f that is at most linear in q_a.
// `degree` is the largest exponent of q_a anywhere in f; terms of higher
// degree in q_a land in neither h nor g.
struct LinearSplit {
  PhasePolynomial h;
  PhasePolynomial g;
  int degree = 0;
};
LinearSplit partial_in(const PhasePolynomial& f, const ModeId& a);

// (s/2) * h^2, fully expanded (h's constant takes part in the square).
PhasePolynomial square_half(const PhasePolynomial& h, double s);

// Term-wise comparison within tol; constants compared modulo 2*pi.
bool poly_equal(const PhasePolynomial& f, const PhasePolynomial& g, double tol);

std::string format_double(double x);
double parse_double(std::string_view text);

}  // namespace hyperforge
