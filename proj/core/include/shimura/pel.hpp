#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "shimura/rational.hpp"
#include "shimura/semilinear.hpp"

namespace shimura {

// p splits in F as prod p_i with local degrees f_i; d = f_1 is the degree of
// the distinguished prime.
struct PelDatum {
  std::uint64_t p = 0;
  int n = 0;
  std::vector<int> local_degrees;
  int g = 0;

  // Throws NotPrime or InvalidArgument. allow_small_genus admits g < 2.
  static PelDatum make(std::uint64_t p, int n, std::vector<int> local_degrees, int g,
                       bool allow_small_genus = false);

  int d() const { return local_degrees.front(); }
  int orbits() const { return static_cast<int>(local_degrees.size()); }
  int orbit_length(int orbit) const { return 2 * local_degrees.at(orbit - 1); }
};

// pos is taken mod 2 f_orbit; orbit is 1-based.
struct Embedding {
  int orbit = 1;
  int pos = 0;
  bool bar = false;

  friend auto operator<=>(const Embedding&, const Embedding&) = default;
};

Embedding sigma(const PelDatum& datum, const Embedding& e, int k = 1);
Embedding star(const PelDatum& datum, const Embedding& e);
Embedding conj(const Embedding& e);
// phi_i = (1, i - 1, false) and phi_i* = (1, d + i - 1, false).
Embedding phi(const PelDatum& datum, int i, bool starred = false, bool bar = false);
bool restricts_to_tau(const PelDatum& datum, const Embedding& e);  // tau or tau-bar
// "phi_2*", "phibar_1", and "phi[3]_2" outside the distinguished orbit.
std::string label(const PelDatum& datum, const Embedding& e);

std::vector<Embedding> build_embeddings(const PelDatum& datum);

enum class HiggsType { Uniformizing, Unitary };
std::string_view name(HiggsType t);

struct SummandDescriptor {
  Embedding embedding;
  int rank_10 = 0;
  int rank_01 = 0;
  long deg_10 = 0;
  long deg_01 = 0;
  HiggsType higgs_type = HiggsType::Unitary;
};

std::vector<SummandDescriptor> summand_table(const PelDatum& datum);

enum class ChainTag {
  Iso,
  Injective,
  Surjective,
  Zero,
  ZeroSource,  // the source bundle itself is zero
  NonzeroSharedZeroLocus,
};
std::string_view name(ChainTag t);
// Edges whose rank can drop at a point of the base.
bool may_degenerate(ChainTag t);

struct ChainEdge {
  Embedding source;
  Embedding target;
  ChainTag tag = ChainTag::Iso;
};

// One edge F^* E^{0,1}_phi -> E^{0,1}_{sigma phi} per embedding, in
// build_embeddings order.
std::vector<ChainEdge> frobenius_chain(const PelDatum& datum);

// Closed forms, checked against the orbit-wise assembly.
NewtonPolygon assemble_global_polygon(const PelDatum& datum, bool orbit1_supersingular);
// Contribution of the distinguished orbit's Phi part:
// {0: 2d, 1/d: 2d} generically, {1/2d: 4d} when supersingular.
NewtonPolygon orbit1_polygon(int d, bool supersingular);

// Block-cyclic crystal over W_n(F_p) of height 4d modelling the Phi part of
// the distinguished orbit; its slopes reproduce orbit1_polygon.
FCrystal orbit1_model_crystal(std::uint64_t p, int d, bool supersingular);

struct MassFormula {
  std::int64_t count = 0;  // (p^d - 1)(g - 1)
  Rational cycle_form;     // (1/2)(1 - p^d)(2 - 2g)
  bool degenerate = false;  // g < 2
};

MassFormula mass_formula(std::uint64_t p, int d, int g);
MassFormula mass_formula(const PelDatum& datum);

// Cartier descent relabels phi by sigma phi.
Embedding cartier_label(const PelDatum& datum, const Embedding& e);

struct PullbackChain {
  int steps = 0;
  Embedding terminal;
};

// For phi_i (2 <= i <= d) and its star/bar counterparts: d - i + 1 pull-backs
// reach the uniformizing summand phi_1* (resp. phi_1). Throws
// NotInDistinguishedOrbit otherwise.
PullbackChain pullback_chain(const Embedding& e, const PelDatum& datum);

}  // namespace shimura
