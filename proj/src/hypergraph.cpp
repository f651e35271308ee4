#include "hyperforge/hypergraph.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace hyperforge {

bool HypergraphDecomposition::is_standard() const {
  if (decorations.has_terms()) return false;
  return std::abs(std::remainder(decorations.constant(), 2.0 * std::numbers::pi)) <= 1e-12;
}

HypergraphDecomposition decompose_graph(const PhasePolynomial& f) {
  HypergraphDecomposition d;
  d.decorations = PhasePolynomial(f.prune_threshold());
  d.decorations.add_constant(f.constant());
  for (const auto& [m, c] : f.terms()) {
    if (m.is_multilinear()) {
      d.edges.push_back(Hyperedge{m.modes(), c});
      d.order = std::max(d.order, d.edges.back().order());
    } else {
      d.decorations.add_term(m, c);
    }
  }
  return d;
}

PhasePolynomial reassemble(const HypergraphDecomposition& d) {
  PhasePolynomial f = d.decorations;
  for (const auto& e : d.edges) f.add_term(e.monomial(), e.weight);
  return f;
}

std::vector<Hyperedge> edges_containing(const HypergraphDecomposition& d, const ModeId& a) {
  std::vector<Hyperedge> out;
  for (const auto& e : d.edges) {
    if (std::binary_search(e.modes.begin(), e.modes.end(), a)) out.push_back(e);
  }
  return out;
}

std::vector<AdjacentSet> adjacency_set(const HypergraphDecomposition& d, const ModeId& a) {
  std::map<std::vector<ModeId>, double> merged;
  for (const auto& e : edges_containing(d, a)) {
    std::vector<ModeId> rest;
    std::copy_if(e.modes.begin(), e.modes.end(), std::back_inserter(rest),
                 [&](const ModeId& m) { return m != a; });
    merged[rest] += e.weight;
  }
  // Order by the monomial of the remainder; the empty remainder (the
  // constant under substitution) sorts last.
  std::vector<AdjacentSet> out;
  for (auto& [modes, w] : merged) out.push_back(AdjacentSet{modes, w});
  std::stable_sort(out.begin(), out.end(), [](const AdjacentSet& x, const AdjacentSet& y) {
    if (x.modes.empty() != y.modes.empty()) return y.modes.empty();
    return Monomial::multilinear(x.modes) < Monomial::multilinear(y.modes);
  });
  return out;
}

std::vector<Hyperedge> union_sets(const std::vector<Hyperedge>& x, const std::vector<Hyperedge>& y,
                                  double prune) {
  PhasePolynomial acc(prune);
  for (const auto& e : x) acc.add_term(e.monomial(), e.weight);
  for (const auto& e : y) acc.add_term(e.monomial(), e.weight);
  return decompose_graph(acc).edges;
}

}  // namespace hyperforge
