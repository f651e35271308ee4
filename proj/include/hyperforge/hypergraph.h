#pragma once

#include <vector>

#include "hyperforge/phase_poly.h"

namespace hyperforge {

// A multilinear term read as a weighted hyperedge. `modes` is sorted.
struct Hyperedge {
  std::vector<ModeId> modes;
  double weight = 0.0;

  std::size_t order() const { return modes.size(); }
  Monomial monomial() const { return Monomial::multilinear(modes); }

  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

struct HypergraphDecomposition {
  std::vector<Hyperedge> edges;  // canonical monomial order
  PhasePolynomial decorations;   // non-multilinear terms plus the global phase
  std::size_t order = 0;

  bool is_standard() const;
};

HypergraphDecomposition decompose_graph(const PhasePolynomial& f);
PhasePolynomial reassemble(const HypergraphDecomposition& d);

std::vector<Hyperedge> edges_containing(const HypergraphDecomposition& d, const ModeId& a);

// (e \ {a}, t_e) for every edge through a; equal remainders are merged. The
// remainder may be empty when {a} itself is an edge.
struct AdjacentSet {
  std::vector<ModeId> modes;
  double weight = 0.0;

  friend bool operator==(const AdjacentSet&, const AdjacentSet&) = default;
};
std::vector<AdjacentSet> adjacency_set(const HypergraphDecomposition& d, const ModeId& a);

// Weighted union of two edge lists; shared edges add, zeros are dropped.
std::vector<Hyperedge> union_sets(const std::vector<Hyperedge>& x, const std::vector<Hyperedge>& y,
                                  double prune = PhasePolynomial::kDefaultPrune);

}  // namespace hyperforge
