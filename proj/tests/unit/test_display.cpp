#include <gtest/gtest.h>

#include "shimura/display.hpp"

namespace shimura {
namespace {

TPoly residue_mod_p(const TPoly& x) { return x.reduce_to(x.context().with_precision(1)); }

// Seeded template draw that yields an invertible display.
std::pair<Display, TemplateParams> template_draw(std::uint64_t p, int m, std::uint64_t seed) {
  const WittContext ctx = make_context(p, m, 2);
  const PelDatum datum = template_datum(p);
  Rng rng(seed);
  for (;;) {
    TemplateParams t = random_template_params(rng, ctx);
    try {
      return {pel_display_template(datum, t), t};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonUnitWhereUnitRequired) throw;
    }
  }
}

TEST(Display, RejectsSingularBlocks) {
  const WittContext ctx = make_context(3, 1, 4);
  const WMatrix z = zero_matrix(ctx, 1, 1);
  EXPECT_THROW(Display::make(z, z, z, z), Error);
  const Display d = Display::make(identity_matrix(ctx, 1), z, z, identity_matrix(ctx, 1));
  EXPECT_TRUE(frobenius_verschiebung_identity(d.crystal()));
  EXPECT_EQ(newton_slopes(d.crystal(), Rational(1)).multiplicity(Rational(0)), 1);
}

TEST(Deformation, ZeroSpecializationRecoversBase) {
  const auto [disp, params] = template_draw(3, 1, 11);
  const DeformedDisplay dd = deform(disp, 6);
  EXPECT_EQ(dd.at_zero().full(), disp.full());
  EXPECT_EQ(deform(disp).truncation(), 10);
  EXPECT_THROW(deform(disp, 1), Error);
}

TEST(Deformation, HasseWittIteratesAreTwistedProducts) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto [disp, params] = template_draw(3, 2, seed);
    const DeformedDisplay dd = deform(disp, 12);
    const TMatrix atc = dd.a_plus_tc();
    EXPECT_EQ(hasse_witt_iterate(dd, 1), atc.map(residue_mod_p));
    for (int s = 1; s <= 3; ++s) {
      const TMatrix next = (hasse_witt_iterate(dd, s) * frobenius(atc, s).map(residue_mod_p));
      EXPECT_EQ(hasse_witt_iterate(dd, s + 1), next);
    }
  }
}

TEST(Template, SparsityOfAAndC) {
  const auto [disp, params] = template_draw(5, 1, 4);
  const std::vector<std::pair<int, int>> a_slots{{0, 4}, {0, 5}, {1, 0}, {2, 0}, {3, 1}, {3, 2}, {4, 3}, {5, 3}};
  const std::vector<std::pair<int, int>> c_slots{{0, 4}, {0, 5}, {1, 6}, {2, 6}, {3, 1}, {3, 2}, {4, 7}, {5, 7}};
  auto allowed = [](const std::vector<std::pair<int, int>>& slots, int i, int j) {
    return std::find(slots.begin(), slots.end(), std::make_pair(i, j)) != slots.end();
  };
  ASSERT_EQ(disp.h0(), 8u);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      if (!allowed(a_slots, i, j)) {
        EXPECT_TRUE(disp.a()(i, j).is_zero()) << "A " << i << "," << j;
      }
      if (!allowed(c_slots, i, j)) {
        EXPECT_TRUE(disp.c()(i, j).is_zero()) << "C " << i << "," << j;
      }
    }
  EXPECT_EQ(disp.a()(1, 0), params.at("a2"));
  EXPECT_EQ(disp.c()(4, 7), params.at("e1*"));
  EXPECT_TRUE(frobenius_verschiebung_identity(disp.crystal()));
}

TEST(Degeneracy, ConstantTermIsGenericallyNonzero) {
  const PelDatum datum = template_datum(3);
  int nonzero = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto [disp, t] = template_draw(3, 2, seed);
    const TPoly eq = degeneracy_equation(deform(disp), phi(datum, 1), phi(datum, 1, true), 2);
    const WittElem want = (t.at("a1*") * t.at("a2").frobenius(1) + t.at("c1*") * t.at("b2").frobenius(1))
                              .reduce_to(eq.context());
    EXPECT_EQ(eq.at_zero(), want);
    if (!want.is_zero()) ++nonzero;
  }
  EXPECT_GT(nonzero, 10);
}

TEST(Degeneracy, TunedEquationHasSimpleZero) {
  const PelDatum datum = template_datum(5);
  const WittContext ctx = make_context(5, 2, 2);
  Rng rng(9);
  int checked = 0;
  while (checked < 10) {
    TemplateParams t = random_template_params(rng, ctx);
    t.at("a1*") = -(t.at("c1*") * t.at("b2").frobenius(1) * t.at("a2").frobenius(1).inverse());
    Display disp = [&] {
      try {
        return pel_display_template(datum, t);
      } catch (const Error&) {
        return Display::make(identity_matrix(ctx, 1), zero_matrix(ctx, 1, 1), zero_matrix(ctx, 1, 1),
                             identity_matrix(ctx, 1));
      }
    }();
    if (disp.h0() != 8) continue;
    const TPoly eq = degeneracy_equation(deform(disp), phi(datum, 1), phi(datum, 1, true), 2);
    EXPECT_TRUE(eq.at_zero().is_zero());
    const WittElem linear = t.at("b1*") * t.at("a2").frobenius(1) + t.at("d1*") * t.at("b2").frobenius(1);
    if (!linear.is_unit()) continue;
    EXPECT_EQ(multiplicity_at_zero(eq), 1);
    EXPECT_EQ(eq.coeff(1), linear.reduce_to(eq.context()));
    ++checked;
  }
}

TEST(Degeneracy, RequiresRankOneCharacters) {
  const auto [disp, params] = template_draw(3, 1, 5);
  const PelDatum datum = template_datum(3);
  try {
    degeneracy_equation(deform(disp), phi(datum, 2), phi(datum, 1, true), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SummandNotRankOne);
  }
}

TEST(Multiplicity, OrderOfVanishing) {
  const WittContext ctx = make_context(3, 1, 1);
  EXPECT_EQ(multiplicity_at_zero(TPoly(ctx, 5, {ctx.zero(), ctx.one(), ctx.from_integer(2), ctx.zero(), ctx.zero()})), 1);
  EXPECT_EQ(multiplicity_at_zero(TPoly::monomial(ctx.one(), 2, 5)), 2);
  EXPECT_EQ(multiplicity_at_zero(TPoly::constant(ctx.one(), 5)), 0);
  try {
    multiplicity_at_zero(TPoly(ctx, 5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IdenticallyZeroToTruncation);
  }
}

TEST(EndoCompat, CharacterMatrixCommutesWithChainDisplays) {
  const PelDatum datum = PelDatum::make(3, 2, {2}, 2);
  const WittContext ctx = make_context(3, 4, 2);
  Rng rng(21);
  const WittElem a1 = ctx.generator();
  const WittElem a2 = ctx.generator() + ctx.one();
  for (int i = 0; i < 5; ++i) {
    const Display disp = chain_display(rng, ctx, datum);
    ASSERT_TRUE(disp.basis().has_value());
    const WMatrix e = character_matrix(datum, *disp.basis(), a1, a2);
    const WMatrix f = disp.frobenius_matrix();
    EXPECT_TRUE(endo_compat(f, identity_matrix(ctx, f.rows())));
    EXPECT_TRUE(endo_compat(f, e));
    WMatrix swapped = e;
    std::swap(swapped(0, 0), swapped(1, 1));
    if (!(swapped == e)) { EXPECT_FALSE(endo_compat(f, swapped)); }
    EXPECT_TRUE(frobenius_verschiebung_identity(disp.crystal()));
  }
  EXPECT_THROW(character_matrix(datum, chain_basis(datum), make_context(3, 2, 2).one(), make_context(3, 2, 2).one()),
               Error);
}

}  // namespace
}  // namespace shimura
