#include <benchmark/benchmark.h>

#include "shimura/deuring.hpp"
#include "shimura/display.hpp"
#include "shimura/random.hpp"
#include "shimura/semilinear.hpp"

namespace shimura {
namespace {

// Args: p, m, n.
void BM_WittMultiply(benchmark::State& state) {
  const WittContext ctx = make_context(static_cast<std::uint64_t>(state.range(0)), static_cast<int>(state.range(1)),
                                       static_cast<int>(state.range(2)));
  Rng rng(1);
  const WittElem x = random_elem(rng, ctx), y = random_elem(rng, ctx);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_WittMultiply)->Args({3, 1, 8})->Args({3, 4, 8})->Args({5, 8, 16})->Args({7, 12, 32});

void BM_WittFrobenius(benchmark::State& state) {
  const WittContext ctx = make_context(3, static_cast<int>(state.range(0)), 8);
  Rng rng(2);
  const WittElem x = random_elem(rng, ctx);
  for (auto _ : state) benchmark::DoNotOptimize(x.frobenius(1));
}
BENCHMARK(BM_WittFrobenius)->Arg(2)->Arg(4)->Arg(8);

// Args: h, m. Precision is the minimum newton_slopes accepts.
void BM_CharacteristicPolynomial(benchmark::State& state) {
  const auto h = static_cast<std::size_t>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const WittContext ctx = make_context(3, m, required_precision(m, static_cast<int>(h), Rational(1)));
  Rng rng(3);
  const WMatrix lin = linearize(random_crystal(rng, ctx, h));
  for (auto _ : state) benchmark::DoNotOptimize(characteristic_polynomial(lin));
}
BENCHMARK(BM_CharacteristicPolynomial)->Args({4, 1})->Args({8, 1})->Args({4, 2})->Args({8, 2});

void BM_NewtonSlopes(benchmark::State& state) {
  const auto h = static_cast<std::size_t>(state.range(0));
  const WittContext ctx = make_context(5, 2, required_precision(2, static_cast<int>(h), Rational(1)));
  Rng rng(4);
  const FCrystal c = random_crystal(rng, ctx, h);
  for (auto _ : state) benchmark::DoNotOptimize(newton_slopes(c));
}
BENCHMARK(BM_NewtonSlopes)->Arg(4)->Arg(8);

// Arg: s. The 8 x 8 template over W_2(F_9), truncated at p^2 + 1.
void BM_HasseWittIterate(benchmark::State& state) {
  const WittContext ctx = make_context(3, 2, 2);
  const PelDatum datum = template_datum(3);
  Rng rng(5);
  std::optional<Display> disp;
  while (!disp) {
    try {
      disp = pel_display_template(datum, random_template_params(rng, ctx));
    } catch (const Error&) {
    }
  }
  const DeformedDisplay dd = deform(*disp);
  for (auto _ : state) benchmark::DoNotOptimize(hasse_witt_iterate(dd, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_HasseWittIterate)->Arg(1)->Arg(2)->Arg(4);

void BM_DeuringCount(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_supersingular(p));
}
BENCHMARK(BM_DeuringCount)->Arg(13)->Arg(61)->Arg(199)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace shimura

BENCHMARK_MAIN();
