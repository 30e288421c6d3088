#include "shimura/display.hpp"

#include <set>

namespace shimura {

namespace {

WittElem p_elem(const WittContext& ctx) {
  return ctx.from_integer(mpz_class(static_cast<unsigned long>(ctx.p())));
}

}  // namespace

Display Display::make(WMatrix a, WMatrix b, WMatrix c, WMatrix d,
                      std::optional<DisplayBasis> basis) {
  require(a.square() && d.square() && !a.empty() && !d.empty(), ErrorKind::DimensionMismatch,
          "A and D must be square and nonempty");
  require(b.rows() == a.rows() && b.cols() == d.cols() && c.rows() == d.rows() &&
              c.cols() == a.cols(),
          ErrorKind::DimensionMismatch, "display blocks have incompatible shapes");
  const WittContext& ctx = a(0, 0).context();
  for (const WMatrix* m : {&b, &c, &d})
    require(m->empty() || (*m)(0, 0).context() == ctx, ErrorKind::ContextMismatch,
            "display blocks over different contexts");
  if (basis)
    require(basis->t.size() == a.rows() && basis->l.size() == d.rows(),
            ErrorKind::DimensionMismatch, "basis labels do not match block sizes");
  Display out;
  out.a_ = std::move(a);
  out.b_ = std::move(b);
  out.c_ = std::move(c);
  out.d_ = std::move(d);
  out.basis_ = std::move(basis);
  try {
    (void)inverse(out.full());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInvertible) throw;
    raise(ErrorKind::NonUnitWhereUnitRequired, "display matrix (A B; C D) is not invertible");
  }
  return out;
}

WMatrix Display::full() const { return block(a_, b_, c_, d_); }

WMatrix Display::frobenius_matrix() const {
  const WittElem p = p_elem(context());
  return block(a_, scale(p, b_), c_, scale(p, d_));
}

FCrystal Display::crystal() const {
  const WittElem p = p_elem(context());
  WMatrix inv = inverse(full());
  for (std::size_t i = 0; i < h0(); ++i)
    for (std::size_t j = 0; j < inv.cols(); ++j) inv(i, j) = p * inv(i, j);
  return FCrystal::make(frobenius_matrix(), frobenius(inv, -1));
}

TMatrix lift_matrix(const WMatrix& m, int truncation) {
  return m.map([truncation](const WittElem& x) { return TPoly::constant(x, truncation); });
}

TMatrix frobenius(const TMatrix& m, long k) {
  return m.map([k](const TPoly& x) { return x.frobenius(k); });
}

DeformedDisplay::DeformedDisplay(Display base, int truncation)
    : base_(std::move(base)), n_(truncation) {
  require(n_ >= 2, ErrorKind::InvalidArgument, "truncation order must be >= 2");
  const TPoly t = TPoly::monomial(base_.context().one(), 1, n_);
  atc_ = lift_matrix(base_.a(), n_) + scale(t, lift_matrix(base_.c(), n_));
  btd_ = lift_matrix(base_.b(), n_) + scale(t, lift_matrix(base_.d(), n_));
}

TMatrix DeformedDisplay::frobenius_matrix() const {
  const TPoly p = TPoly::constant(p_elem(base_.context()), n_);
  return block(atc_, scale(p, btd_), lift_matrix(base_.c(), n_),
               scale(p, lift_matrix(base_.d(), n_)));
}

Display DeformedDisplay::at_zero() const {
  auto zero = [](const TPoly& x) { return x.at_zero(); };
  return Display::make(atc_.map(zero), btd_.map(zero), base_.c(), base_.d(), base_.basis());
}

DeformedDisplay deform(const Display& disp, int truncation) {
  if (truncation == 0) {
    const auto p = static_cast<int>(disp.context().p());
    truncation = p * p + 1;
  }
  return DeformedDisplay(disp, truncation);
}

bool endo_compat(const TMatrix& m1, const TMatrix& m2) {
  require(m1.square() && m1.rows() == m2.rows() && m2.square(), ErrorKind::DimensionMismatch,
          "endo_compat needs square matrices of one shape");
  return m1 * frobenius(m2, 1) == m2 * m1;
}

bool endo_compat(const WMatrix& m1, const WMatrix& m2) {
  require(m1.square() && m1.rows() == m2.rows() && m2.square(), ErrorKind::DimensionMismatch,
          "endo_compat needs square matrices of one shape");
  return m1 * frobenius(m2, 1) == m2 * m1;
}

TMatrix hasse_witt_iterate(const DeformedDisplay& dd, int s) {
  const TMatrix product = twisted_product(
      dd.a_plus_tc(), s, [](int k, const TMatrix& m) { return frobenius(m, k); });
  const WittContext residue = dd.base().context().with_precision(1);
  return product.map([&](const TPoly& x) { return x.reduce_to(residue); });
}

namespace {

std::size_t unique_t_index(const DisplayBasis& basis, const Embedding& e) {
  std::size_t found = basis.t.size();
  int count = 0;
  for (std::size_t i = 0; i < basis.t.size(); ++i) {
    if (basis.t[i].character == e) {
      found = i;
      ++count;
    }
  }
  require(count == 1, ErrorKind::SummandNotRankOne,
          "character carries " + std::to_string(count) + " T basis vectors, expected 1");
  return found;
}

}  // namespace

TPoly degeneracy_equation(const DeformedDisplay& dd, const Embedding& source,
                          const Embedding& target, int s) {
  require(dd.base().basis().has_value(), ErrorKind::InvalidArgument,
          "degeneracy equation needs a labelled display basis");
  const DisplayBasis& basis = *dd.base().basis();
  const std::size_t col = unique_t_index(basis, source);
  const std::size_t row = unique_t_index(basis, target);
  return hasse_witt_iterate(dd, s)(row, col);
}

int multiplicity_at_zero(const TPoly& eq) {
  const int k = eq.order();
  require(k >= 0, ErrorKind::IdenticallyZeroToTruncation,
          "equation vanishes to truncation order " + std::to_string(eq.truncation()));
  return k;
}

const std::vector<std::string>& template_parameter_names() {
  static const std::vector<std::string> names = {
      "a1",  "b1",  "c1",  "d1",  "a2",  "b2",  "e1",  "f1",
      "a1*", "b1*", "c1*", "d1*", "a2*", "b2*", "e1*", "f1*"};
  return names;
}

PelDatum template_datum(std::uint64_t p, int g) { return PelDatum::make(p, 2, {2}, g); }

DisplayBasis template_basis(const PelDatum& datum) {
  require(datum.n == 2 && datum.local_degrees == std::vector<int>{2}, ErrorKind::InvalidArgument,
          "the worked display needs n = 2 and f = [2]");
  return chain_basis(datum);
}

Display pel_display_template(const PelDatum& datum, const TemplateParams& params) {
  const DisplayBasis basis = template_basis(datum);
  for (const auto& key : template_parameter_names())
    require(params.count(key) == 1, ErrorKind::InvalidArgument, "missing template slot " + key);
  const WittContext& ctx = params.at("a1").context();
  auto v = [&](const std::string& key) {
    const WittElem& x = params.at(key);
    require(x.context() == ctx, ErrorKind::ContextMismatch, "template slots over mixed contexts");
    return x;
  };
  WMatrix a = zero_matrix(ctx, 8, 8), b = zero_matrix(ctx, 8, 8);
  WMatrix c = zero_matrix(ctx, 8, 8), d = zero_matrix(ctx, 8, 8);
  for (int half = 0; half < 2; ++half) {
    const std::string s = half == 0 ? "" : "*";
    const int o = 3 * half;       // offset of the starred copy
    const int src = 4 - 3 * half;  // X of phi_2* (resp. phi_2) feeds phi_1 (resp. phi_1*)
    a(o, src) = v("a1" + s);
    a(o, src + 1) = v("c1" + s);
    c(o, src) = v("b1" + s);
    c(o, src + 1) = v("d1" + s);
    a(o + 1, o) = v("a2" + s);
    a(o + 2, o) = v("b2" + s);
    c(o + 1, 6 + half) = v("e1" + s);
    c(o + 2, 6 + half) = v("f1" + s);
    const bool a2_unit = v("a2" + s).is_unit();
    b(o + 1, o) = a2_unit ? ctx.zero() : ctx.one();
    b(o + 2, o) = a2_unit ? ctx.one() : ctx.zero();
    const bool e1_unit = v("e1" + s).is_unit();
    d(o + 1, 6 + half) = e1_unit ? ctx.zero() : ctx.one();
    d(o + 2, 6 + half) = e1_unit ? ctx.one() : ctx.zero();
    // Y of phibar_1* (resp. phibar_1) and X of it are hit by the phibar_2
    // (resp. phibar_2*) pair of L columns.
    b(7 - half, o + 1) = ctx.one();
    d(7 - half, o + 2) = ctx.one();
  }
  return Display::make(std::move(a), std::move(b), std::move(c), std::move(d), basis);
}

TemplateParams random_template_params(Rng& rng, const WittContext& ctx) {
  TemplateParams params;
  for (const auto& key : template_parameter_names()) params.emplace(key, random_unit(rng, ctx));
  return params;
}

DisplayBasis chain_basis(const PelDatum& datum) {
  DisplayBasis basis;
  const int d = datum.d();
  for (int pos = 0; pos < 2 * d; ++pos) {
    const Embedding e{1, pos, false};
    if (restricts_to_tau(datum, e)) {
      basis.t.push_back({e, false});
      basis.l.push_back({e, true});
    } else {
      basis.t.push_back({e, false});
      basis.t.push_back({e, true});
      basis.l.push_back({conj(e), false});
      basis.l.push_back({conj(e), true});
    }
  }
  for (int pos : {0, d}) {
    basis.t.push_back({{1, pos, true}, true});
    basis.l.push_back({{1, pos, true}, false});
  }
  for (int orbit = 2; orbit <= datum.orbits(); ++orbit) {
    for (int pos = 0; pos < datum.orbit_length(orbit); ++pos) {
      const Embedding e{orbit, pos, false};
      basis.t.push_back({e, false});
      basis.t.push_back({e, true});
      basis.l.push_back({conj(e), false});
      basis.l.push_back({conj(e), true});
    }
  }
  return basis;
}

Display chain_display(Rng& rng, const WittContext& ctx, const PelDatum& datum) {
  const DisplayBasis basis = chain_basis(datum);
  std::vector<Embedding> chars;
  for (const auto& v : basis.t) chars.push_back(v.character);
  for (const auto& v : basis.l) chars.push_back(v.character);
  const std::size_t h0 = basis.t.size();
  const std::size_t h = chars.size();
  WMatrix g = zero_matrix(ctx, h, h);
  std::set<Embedding> targets(chars.begin(), chars.end());
  for (const auto& psi : targets) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < h; ++i) {
      if (chars[i] == psi) rows.push_back(i);
      if (sigma(datum, chars[i]) == psi) cols.push_back(i);
    }
    require(rows.size() == 2 && cols.size() == 2, ErrorKind::InvalidArgument,
            "character blocks of the chain basis must be 2 x 2");
    const WMatrix blk = random_invertible(rng, ctx, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g(rows[i], cols[j]) = blk(i, j);
  }
  return Display::make(submatrix(g, 0, 0, h0, h0), submatrix(g, 0, h0, h0, h - h0),
                       submatrix(g, h0, 0, h - h0, h0), submatrix(g, h0, h0, h - h0, h - h0),
                       basis);
}

WMatrix character_matrix(const PelDatum& datum, const DisplayBasis& basis, const WittElem& a1,
                         const WittElem& a2) {
  const WittContext& ctx = a1.context();
  require(a2.context() == ctx, ErrorKind::ContextMismatch, "character values over two contexts");
  for (int orbit = 1; orbit <= datum.orbits(); ++orbit)
    require(ctx.degree() % datum.orbit_length(orbit) == 0, ErrorKind::InvalidArgument,
            "residue degree must be a multiple of every orbit length");
  std::vector<BasisVector> all = basis.t;
  all.insert(all.end(), basis.l.begin(), basis.l.end());
  WMatrix m = zero_matrix(ctx, all.size(), all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Embedding& e = all[i].character;
    m(i, i) = (e.bar ? a2 : a1).frobenius(e.pos);
  }
  return m;
}

}  // namespace shimura
