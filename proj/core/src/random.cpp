#include "shimura/random.hpp"

namespace shimura {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  require(bound > 0, ErrorKind::InvalidArgument, "empty range");
  // Rejection sampling keeps the draw independent of the standard library.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

WittElem random_elem(Rng& rng, const WittContext& ctx) {
  std::vector<mpz_class> coeffs;
  const mpz_class pz(static_cast<unsigned long>(ctx.p()));
  for (int i = 0; i < ctx.degree(); ++i) {
    mpz_class c = 0;
    for (int k = 0; k < ctx.precision(); ++k) c = c * pz + uniform_below(rng, ctx.p());
    coeffs.push_back(c);
  }
  return ctx.element(std::move(coeffs));
}

WittElem random_unit(Rng& rng, const WittContext& ctx) {
  for (;;) {
    WittElem x = random_elem(rng, ctx);
    if (x.is_unit()) return x;
  }
}

WMatrix random_invertible(Rng& rng, const WittContext& ctx, std::size_t n) {
  WMatrix lower = identity_matrix(ctx, n);
  WMatrix upper = identity_matrix(ctx, n);
  for (std::size_t i = 0; i < n; ++i) {
    upper(i, i) = random_unit(rng, ctx);
    for (std::size_t j = 0; j < i; ++j) lower(i, j) = random_elem(rng, ctx);
    for (std::size_t j = i + 1; j < n; ++j) upper(i, j) = random_elem(rng, ctx);
  }
  return lower * upper;
}

FCrystal random_crystal(Rng& rng, const WittContext& ctx, std::size_t h) {
  const WittElem p = ctx.from_integer(mpz_class(static_cast<unsigned long>(ctx.p())));
  const WMatrix u = random_invertible(rng, ctx, h);
  // U' = P (1 + pR) sigma(U)^{-1} makes the crystal isomorphic to D P (1 + pR),
  // so non-ordinary slopes occur with positive frequency.
  WMatrix u2 = random_invertible(rng, ctx, h);
  if (uniform_below(rng, 2) == 1) {
    std::vector<std::size_t> perm(h);
    for (std::size_t i = 0; i < h; ++i) perm[i] = i;
    for (std::size_t i = h; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
    WMatrix near_one = identity_matrix(ctx, h);
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) 
            near_one(i, j) = near_one(i, j) + p * random_elem(rng, ctx);
    WMatrix pm = zero_matrix(ctx, h, h);
    for (std::size_t i = 0; i < h; ++i) pm(i, perm[i]) = ctx.one();
    u2 = pm * near_one * frobenius(inverse(u), 1);
  }
  WMatrix diag = identity_matrix(ctx, h);
  WMatrix codiag = identity_matrix(ctx, h);
  for (std::size_t i = 0; i < h; ++i) {
    if (uniform_below(rng, 2) == 1) {
      diag(i, i) = p;
    } else {
      codiag(i, i) = p;
    }
  }
  WMatrix m = u * diag * u2;
  WMatrix v = frobenius(inverse(u2) * codiag * inverse(u), -1);
  return FCrystal::make(std::move(m), std::move(v));
}

}  // namespace shimura
