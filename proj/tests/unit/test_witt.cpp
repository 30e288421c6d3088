#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shimura/random.hpp"
#include "shimura/witt.hpp"

namespace shimura {
namespace {

mpz_class mod(const mpz_class& x, const mpz_class& m) {
  mpz_class r = x % m;
  if (r < 0) r += m;
  return r;
}

TEST(WittContext, PrimeFieldLiftIsX) {
  const WittContext ctx = make_context(3, 1, 2);
  EXPECT_EQ(ctx.modulus(), 9);
  EXPECT_EQ(ctx.lift_poly(), (std::vector<mpz_class>{0, 1}));
}

TEST(WittContext, QuadraticLiftIsFirstIrreducible) {
  const WittContext ctx = make_context(3, 2, 2);
  EXPECT_EQ(ctx.lift_poly(), (std::vector<mpz_class>{1, 0, 1}));
}

TEST(WittContext, RejectsBadParameters) {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ParseError;
  };
  EXPECT_EQ(kind([] { make_context(4, 1, 2); }), ErrorKind::NotPrime);
  EXPECT_EQ(kind([] { make_context(3, 0, 2); }), ErrorKind::DegreeZero);
  EXPECT_THROW(make_context(3, 1, 0), Error);
  EXPECT_THROW(WittContext::with_lift_poly(3, 2, {2, 0, 1}), Error);  // x^2 + 2 = (x-1)(x+1)
}

TEST(WittContext, ElementsFromDifferentContextsDoNotMix) {
  const WittContext a = make_context(3, 2, 2);
  const WittContext b = make_context(3, 2, 3);
  try {
    (void)(a.one() + b.one());
    FAIL() << "expected ContextMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ContextMismatch);
  }
}

// Oracle: W_n(F_p) = Z/p^n.
TEST(WittArithmetic, PrimeFieldMatchesIntegersModPn) {
  Rng rng(1);
  for (std::uint64_t p : {2, 3, 7}) {
    const WittContext ctx = make_context(p, 1, 5);
    const mpz_class m = ctx.modulus();
    for (int i = 0; i < 50; ++i) {
      const WittElem x = random_elem(rng, ctx);
      const WittElem y = random_elem(rng, ctx);
      const mpz_class a = x.coeffs()[0], b = y.coeffs()[0];
      EXPECT_EQ((x + y).coeffs()[0], mod(a + b, m));
      EXPECT_EQ((x - y).coeffs()[0], mod(a - b, m));
      EXPECT_EQ((x * y).coeffs()[0], mod(a * b, m));
      EXPECT_EQ(x.frobenius(1), x);
    }
  }
}

// Oracle: W_n(F_9) = Z_3[i]/3^n with sigma = complex conjugation.
TEST(WittArithmetic, QuadraticMatchesGaussianIntegers) {
  Rng rng(2);
  const WittContext ctx = make_context(3, 2, 4);
  const mpz_class m = ctx.modulus();
  auto gauss = [&](const WittElem& x) { return oracle::Gaussian{x.coeffs()[0], x.coeffs()[1], m}; };
  for (int i = 0; i < 100; ++i) {
    const WittElem x = random_elem(rng, ctx);
    const WittElem y = random_elem(rng, ctx);
    EXPECT_EQ(gauss(x * y), gauss(x) * gauss(y));
    EXPECT_EQ(gauss(x + y), gauss(x) + gauss(y));
    EXPECT_EQ(gauss(x.frobenius(1)), gauss(x).conj());
  }
}

TEST(WittFrobenius, GeneratorOfF9MapsToMinusX) {
  const WittContext ctx = make_context(3, 2, 2);
  const WittElem x = ctx.generator();
  const WittElem sx = x.frobenius(1);
  EXPECT_EQ(sx, -x);
  EXPECT_TRUE((sx * sx + ctx.one()).is_zero());
  EXPECT_EQ(sx.residue(), x.pow(3).residue());
}

class WittProperties : public ::testing::TestWithParam<std::tuple<std::uint64_t, int, int>> {};

TEST_P(WittProperties, RingAndFrobeniusLaws) {
  const auto [p, m, n] = GetParam();
  const WittContext ctx = make_context(p, m, n);
  Rng rng(p * 100 + m * 10 + n);
  const mpz_class pz(static_cast<unsigned long>(p));
  for (int i = 0; i < 30; ++i) {
    const WittElem x = random_elem(rng, ctx), y = random_elem(rng, ctx), z = random_elem(rng, ctx);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ((x * y).frobenius(1), x.frobenius(1) * y.frobenius(1));
    EXPECT_EQ((x + y).frobenius(1), x.frobenius(1) + y.frobenius(1));
    EXPECT_EQ(x.frobenius(1).residue(), x.pow(pz).residue());
    WittElem w = x;
    for (int k = 0; k < m; ++k) w = w.frobenius(1);
    EXPECT_EQ(w, x);
    EXPECT_EQ(x.frobenius(-1).frobenius(1), x);
    const WittElem u = random_unit(rng, ctx);
    EXPECT_EQ(u * u.inverse(), ctx.one());
  }
}

TEST_P(WittProperties, TeichmullerIsMultiplicativeAndFixed) {
  const auto [p, m, n] = GetParam();
  const WittContext ctx = make_context(p, m, n);
  Rng rng(7 + p);
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, static_cast<unsigned long>(m));
  for (int i = 0; i < 20; ++i) {
    std::vector<std::uint64_t> a(m), b(m);
    for (auto& v : a) v = uniform_below(rng, p);
    for (auto& v : b) v = uniform_below(rng, p);
    const WittElem ta = teichmuller(ctx, a), tb = teichmuller(ctx, b);
    const auto ab = (ctx.lift_residue(a) * ctx.lift_residue(b)).residue();
    EXPECT_EQ(ta * tb, teichmuller(ctx, ab));
    EXPECT_EQ(ta.pow(q), ta);
    EXPECT_EQ(ta.residue(), a);
  }
}

INSTANTIATE_TEST_SUITE_P(Contexts, WittProperties,
                         ::testing::Values(std::make_tuple(2, 1, 6), std::make_tuple(2, 3, 4),
                                           std::make_tuple(3, 2, 3), std::make_tuple(3, 4, 2),
                                           std::make_tuple(5, 3, 3), std::make_tuple(7, 2, 2)));

TEST(WittTeichmuller, SmallValues) {
  const WittContext ctx = make_context(3, 1, 2);
  EXPECT_TRUE(teichmuller(ctx, {0}).is_zero());
  EXPECT_EQ(teichmuller(ctx, {1}), ctx.one());
  EXPECT_EQ(teichmuller(ctx, {2}), ctx.from_integer(8));
}

TEST(WittValuation, CountsPowersOfP) {
  const WittContext ctx = make_context(5, 2, 4);
  EXPECT_EQ(valuation(ctx, ctx.one()), 0);
  EXPECT_EQ(valuation(ctx, ctx.from_integer(25) * ctx.generator()), 2);
  EXPECT_EQ(valuation(ctx, ctx.from_integer(125)), 3);
  EXPECT_FALSE(valuation(ctx, ctx.from_integer(625)).has_value());
  EXPECT_FALSE(ctx.from_integer(5).is_unit());
  EXPECT_THROW(ctx.from_integer(5).inverse(), Error);
}

TEST(WittPrecision, ReductionIsARingMap) {
  Rng rng(3);
  const WittContext hi = make_context(3, 2, 5);
  const WittContext lo = hi.with_precision(2);
  for (int i = 0; i < 20; ++i) {
    const WittElem x = random_elem(rng, hi), y = random_elem(rng, hi);
    EXPECT_EQ((x * y).reduce_to(lo), x.reduce_to(lo) * y.reduce_to(lo));
    EXPECT_EQ(x.frobenius(1).reduce_to(lo), x.reduce_to(lo).frobenius(1));
  }
}

}  // namespace
}  // namespace shimura
