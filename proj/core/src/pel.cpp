#include "shimura/pel.hpp"

#include <limits>
#include <numeric>

#include "shimura/fp_poly.hpp"

namespace shimura {

PelDatum PelDatum::make(std::uint64_t p, int n, std::vector<int> local_degrees, int g,
                        bool allow_small_genus) {
  require(fp::is_prime(p), ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  require(n >= 2, ErrorKind::InvalidArgument, "total degree n must be >= 2");
  require(!local_degrees.empty(), ErrorKind::InvalidArgument, "local degrees are missing");
  for (int f : local_degrees) require(f >= 1, ErrorKind::InvalidArgument, "local degree < 1");
  require(std::accumulate(local_degrees.begin(), local_degrees.end(), 0) == n,
          ErrorKind::InvalidArgument, "local degrees must sum to n");
  require(allow_small_genus ? g >= 0 : g >= 2, ErrorKind::InvalidArgument,
          "genus must be >= 2");
  return PelDatum{p, n, std::move(local_degrees), g};
}

namespace {

void check_embedding(const PelDatum& datum, const Embedding& e) {
  require(e.orbit >= 1 && e.orbit <= datum.orbits(), ErrorKind::InvalidArgument,
          "orbit index out of range");
  require(e.pos >= 0 && e.pos < datum.orbit_length(e.orbit), ErrorKind::InvalidArgument,
          "embedding position out of range");
}

int wrap(int value, int modulus) {
  const int r = value % modulus;
  return r < 0 ? r + modulus : r;
}

}  // namespace

Embedding sigma(const PelDatum& datum, const Embedding& e, int k) {
  check_embedding(datum, e);
  return {e.orbit, wrap(e.pos + k, datum.orbit_length(e.orbit)), e.bar};
}

Embedding star(const PelDatum& datum, const Embedding& e) {
  check_embedding(datum, e);
  const int f = datum.local_degrees[e.orbit - 1];
  return {e.orbit, wrap(e.pos + f, 2 * f), e.bar};
}

Embedding conj(const Embedding& e) { return {e.orbit, e.pos, !e.bar}; }

Embedding phi(const PelDatum& datum, int i, bool starred, bool bar) {
  require(i >= 1 && i <= datum.d(), ErrorKind::InvalidArgument, "phi index out of range");
  return {1, (starred ? datum.d() : 0) + i - 1, bar};
}

bool restricts_to_tau(const PelDatum& datum, const Embedding& e) {
  check_embedding(datum, e);
  return e.orbit == 1 && (e.pos == 0 || e.pos == datum.d());
}

std::string label(const PelDatum& datum, const Embedding& e) {
  check_embedding(datum, e);
  const int f = datum.local_degrees[e.orbit - 1];
  std::string out = e.bar ? "phibar" : "phi";
  if (e.orbit != 1) out += "[" + std::to_string(e.orbit) + "]";
  out += "_" + std::to_string(e.pos % f + 1);
  if (e.pos >= f) out += "*";
  return out;
}

std::vector<Embedding> build_embeddings(const PelDatum& datum) {
  std::vector<Embedding> out;
  for (int orbit = 1; orbit <= datum.orbits(); ++orbit)
    for (int pos = 0; pos < datum.orbit_length(orbit); ++pos)
      for (bool bar : {false, true}) out.push_back({orbit, pos, bar});
  return out;
}

std::string_view name(HiggsType t) {
  return t == HiggsType::Uniformizing ? "uniformizing" : "unitary";
}

std::vector<SummandDescriptor> summand_table(const PelDatum& datum) {
  std::vector<SummandDescriptor> out;
  for (const auto& e : build_embeddings(datum)) {
    SummandDescriptor s;
    s.embedding = e;
    if (restricts_to_tau(datum, e)) {
      s.rank_10 = 1;
      s.rank_01 = 1;
      s.deg_10 = datum.g - 1;
      s.deg_01 = 1 - datum.g;
      s.higgs_type = HiggsType::Uniformizing;
    } else {
      s.rank_10 = e.bar ? 2 : 0;
      s.rank_01 = e.bar ? 0 : 2;
      s.higgs_type = HiggsType::Unitary;
    }
    out.push_back(s);
  }
  return out;
}

std::string_view name(ChainTag t) {
  switch (t) {
    case ChainTag::Iso: return "ISO";
    case ChainTag::Injective: return "INJECTIVE";
    case ChainTag::Surjective: return "SURJECTIVE";
    case ChainTag::Zero: return "ZERO";
    case ChainTag::ZeroSource: return "ZERO_SOURCE";
    case ChainTag::NonzeroSharedZeroLocus: return "NONZERO_SHARED_ZERO_LOCUS";
  }
  return "UNKNOWN";
}

bool may_degenerate(ChainTag t) {
  return t == ChainTag::Injective || t == ChainTag::Surjective ||
         t == ChainTag::NonzeroSharedZeroLocus;
}

std::vector<ChainEdge> frobenius_chain(const PelDatum& datum) {
  const int d = datum.d();
  std::vector<ChainEdge> out;
  for (const auto& e : build_embeddings(datum)) {
    ChainEdge edge{e, sigma(datum, e), ChainTag::Iso};
    if (e.orbit == 1) {
      const int i = e.pos % d;  // phi_{i+1} or its star
      if (d == 1) {
        edge.tag = ChainTag::NonzeroSharedZeroLocus;
      } else if (!e.bar) {
        if (i == 0) edge.tag = ChainTag::Injective;
        if (i == d - 1) edge.tag = ChainTag::Surjective;
      } else {
        if (i == 0) edge.tag = ChainTag::Zero;
        if (i == d - 1) edge.tag = ChainTag::ZeroSource;
      }
    }
    out.push_back(edge);
  }
  return out;
}

NewtonPolygon orbit1_polygon(int d, bool supersingular) {
  require(d >= 1, ErrorKind::InvalidArgument, "d must be >= 1");
  if (supersingular) return NewtonPolygon({{Rational(1, 2 * d), 4 * d}});
  return NewtonPolygon({{Rational(0), 2 * d}, {Rational(1, d), 2 * d}});
}

NewtonPolygon assemble_global_polygon(const PelDatum& datum, bool orbit1_supersingular) {
  const NewtonPolygon n1 = orbit1_polygon(datum.d(), orbit1_supersingular);
  NewtonPolygon assembled = merge(n1, dual_polygon(n1));
  for (int orbit = 2; orbit <= datum.orbits(); ++orbit) {
    const int f = datum.local_degrees[orbit - 1];
    assembled = merge(assembled, NewtonPolygon({{Rational(0), 4 * f}, {Rational(1), 4 * f}}));
  }

  const int n = datum.n;
  const int d = datum.d();
  const NewtonPolygon closed =
      orbit1_supersingular
          ? NewtonPolygon({{Rational(0), 4 * (n - d)},
                           {Rational(1, 2 * d), 4 * d},
                           {Rational(1) - Rational(1, 2 * d), 4 * d},
                           {Rational(1), 4 * (n - d)}})
          : NewtonPolygon({{Rational(0), 4 * n - 2 * d},
                           {Rational(1, d), 2 * d},
                           {Rational(1) - Rational(1, d), 2 * d},
                           {Rational(1), 4 * n - 2 * d}});
  require(assembled == closed, ErrorKind::InvalidArgument,
          "orbit-wise polygon disagrees with the closed form");
  return assembled;
}

FCrystal orbit1_model_crystal(std::uint64_t p, int d, bool supersingular) {
  require(d >= 1, ErrorKind::InvalidArgument, "d must be >= 1");
  const int blocks = 2 * d;
  const int h = 2 * blocks;
  const WittContext ctx = make_context(p, 1, h + 2);
  const long pl = static_cast<long>(p);
  const WMatrix hodge = supersingular ? from_integers(ctx, 2, 2, {0, 1, pl, 0})
                                      : from_integers(ctx, 2, 2, {1, 0, 0, pl});
  const WMatrix unit = identity_matrix(ctx, 2);
  WMatrix m = zero_matrix(ctx, h, h);
  for (int k = 0; k < blocks; ++k) {
    const WMatrix& b = (k == 0 || k == d) ? hodge : unit;
    const int row = 2 * ((k + 1) % blocks);
    const int col = 2 * k;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(row + i, col + j) = b(i, j);
  }
  return FCrystal::make(std::move(m));
}

MassFormula mass_formula(std::uint64_t p, int d, int g) {
  require(fp::is_prime(p), ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  require(d >= 1, ErrorKind::InvalidArgument, "d must be >= 1");
  require(g >= 0, ErrorKind::InvalidArgument, "genus must be >= 0");
  std::int64_t pd = 1;
  for (int i = 0; i < d; ++i) {
    require(pd <= std::numeric_limits<std::int64_t>::max() / static_cast<std::int64_t>(p) / 4,
            ErrorKind::InvalidArgument, "p^d overflows 64-bit arithmetic");
    pd *= static_cast<std::int64_t>(p);
  }
  MassFormula out;
  out.count = (pd - 1) * (g - 1);
  out.cycle_form = Rational(1, 2) * Rational(1 - pd) * Rational(2 - 2 * g);
  out.degenerate = g < 2;
  require(out.cycle_form == Rational(out.count), ErrorKind::InvalidArgument,
          "mass formula and cycle form disagree");
  return out;
}

MassFormula mass_formula(const PelDatum& datum) {
  require(datum.g >= 2, ErrorKind::InvalidArgument, "genus must be >= 2");
  return mass_formula(datum.p, datum.d(), datum.g);
}

Embedding cartier_label(const PelDatum& datum, const Embedding& e) { return sigma(datum, e); }

PullbackChain pullback_chain(const Embedding& e, const PelDatum& datum) {
  check_embedding(datum, e);
  const int d = datum.d();
  const int i = e.pos % d + 1;
  require(e.orbit == 1 && i >= 2, ErrorKind::NotInDistinguishedOrbit,
          label(datum, e) + " is not a non-uniformizing summand of the distinguished orbit");
  PullbackChain out;
  out.steps = d - i + 1;
  out.terminal = sigma(datum, e, out.steps);
  return out;
}

}  // namespace shimura
