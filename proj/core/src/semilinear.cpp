#include "shimura/semilinear.hpp"

#include <algorithm>
#include <map>

namespace shimura {

WMatrix zero_matrix(const WittContext& ctx, std::size_t rows, std::size_t cols) {
  return WMatrix(rows, cols, ctx.zero());
}

WMatrix identity_matrix(const WittContext& ctx, std::size_t n) {
  return identity(n, ctx.zero(), ctx.one());
}

WMatrix from_integers(const WittContext& ctx, std::size_t rows, std::size_t cols,
                      const std::vector<long>& entries) {
  require(entries.size() == rows * cols, ErrorKind::DimensionMismatch,
          "entry count does not match shape");
  std::vector<WittElem> data;
  data.reserve(entries.size());
  for (long e : entries) data.push_back(ctx.from_integer(mpz_class(e)));
  return WMatrix(rows, cols, std::move(data));
}

WMatrix frobenius(const WMatrix& m, long k) {
  return m.map([k](const WittElem& x) { return x.frobenius(k); });
}

WMatrix reduce_matrix(const WMatrix& m, const WittContext& lower) {
  return m.map([&](const WittElem& x) { return x.reduce_to(lower); });
}

SemilinearMap compose(const SemilinearMap& f, const SemilinearMap& g) {
  require(f.matrix.cols() == g.matrix.rows(), ErrorKind::DimensionMismatch,
          "composition shape mismatch");
  require(f.context() == g.context(), ErrorKind::ContextMismatch,
          "composition across contexts");
  return {f.matrix * frobenius(g.matrix, f.twist), f.twist + g.twist};
}

namespace {

bool is_p_times_identity(const WMatrix& m) {
  const WittContext& ctx = m(0, 0).context();
  const WittElem p = ctx.from_integer(mpz_class(static_cast<unsigned long>(ctx.p())));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!(m(i, j) == (i == j ? p : ctx.zero()))) return false;
  return true;
}

WMatrix transpose(const WMatrix& m) {
  WMatrix t(m.cols(), m.rows(), m(0, 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

}  // namespace

FCrystal FCrystal::make(WMatrix frobenius, std::optional<WMatrix> verschiebung) {
  require(frobenius.square() && !frobenius.empty(), ErrorKind::DimensionMismatch,
          "Frobenius matrix must be square and nonempty");
  FCrystal c;
  c.f_ = {std::move(frobenius), 1};
  if (verschiebung) {
    require(verschiebung->rows() == c.f_.dim() && verschiebung->cols() == c.f_.dim(),
            ErrorKind::DimensionMismatch, "Verschiebung shape differs from Frobenius");
    require((*verschiebung)(0, 0).context() == c.context(), ErrorKind::ContextMismatch,
            "Verschiebung over another context");
    c.v_ = SemilinearMap{std::move(*verschiebung), -1};
    require(frobenius_verschiebung_identity(c), ErrorKind::InvalidArgument,
            "F V = V F = p fails");
  }
  return c;
}

FCrystal FCrystal::change_basis(const WMatrix& u) const {
  const WMatrix u_inv = inverse(u);
  FCrystal c;
  c.f_ = {u_inv * f_.matrix * shimura::frobenius(u, 1), 1};
  if (v_) c.v_ = SemilinearMap{u_inv * v_->matrix * shimura::frobenius(u, -1), -1};
  return c;
}

bool frobenius_verschiebung_identity(const FCrystal& c) {
  if (!c.verschiebung()) return false;
  const SemilinearMap& f = c.frobenius();
  const SemilinearMap& v = *c.verschiebung();
  return is_p_times_identity(compose(f, v).matrix) && is_p_times_identity(compose(v, f).matrix);
}

FCrystal dual_crystal(const FCrystal& c) {
  require(c.verschiebung().has_value(), ErrorKind::InvalidArgument,
          "dual crystal needs the Verschiebung");
  WMatrix f = transpose(frobenius(c.verschiebung()->matrix, 1));
  WMatrix v = transpose(frobenius(c.frobenius().matrix, -1));
  return FCrystal::make(std::move(f), std::move(v));
}

NewtonPolygon::NewtonPolygon(std::vector<SlopePart> parts) {
  std::map<Rational, int> merged;
  for (const auto& part : parts) {
    require(part.multiplicity >= 0, ErrorKind::InvalidArgument, "negative slope multiplicity");
    if (part.multiplicity > 0) merged[part.slope] += part.multiplicity;
  }
  for (const auto& [slope, mult] : merged) parts_.push_back({slope, mult});
}

int NewtonPolygon::height() const {
  int h = 0;
  for (const auto& part : parts_) h += part.multiplicity;
  return h;
}

Rational NewtonPolygon::total_rise() const {
  Rational r(0);
  for (const auto& part : parts_) r += part.slope * part.multiplicity;
  return r;
}

int NewtonPolygon::multiplicity(const Rational& slope) const {
  for (const auto& part : parts_)
    if (part.slope == slope) return part.multiplicity;
  return 0;
}

std::vector<std::pair<int, Rational>> NewtonPolygon::vertices() const {
  std::vector<std::pair<int, Rational>> out{{0, Rational(0)}};
  for (const auto& part : parts_) {
    const auto& [x, y] = out.back();
    out.emplace_back(x + part.multiplicity, y + part.slope * part.multiplicity);
  }
  return out;
}

Rational NewtonPolygon::value_at(int x) const {
  require(x >= 0 && x <= height(), ErrorKind::InvalidArgument, "abscissa outside polygon");
  Rational y(0);
  int remaining = x;
  for (const auto& part : parts_) {
    const int step = std::min(remaining, part.multiplicity);
    y += part.slope * step;
    remaining -= step;
    if (remaining == 0) break;
  }
  return y;
}

NewtonPolygon merge(const NewtonPolygon& a, const NewtonPolygon& b) {
  std::vector<SlopePart> parts = a.parts();
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return NewtonPolygon(std::move(parts));
}

NewtonPolygon dual_polygon(const NewtonPolygon& np) {
  std::vector<SlopePart> parts;
  for (const auto& part : np.parts()) {
    require(part.slope >= 0 && part.slope <= 1, ErrorKind::SlopeOutOfRange,
            "dual polygon needs slopes in [0, 1]");
    parts.push_back({Rational(1) - part.slope, part.multiplicity});
  }
  return NewtonPolygon(std::move(parts));
}

bool is_self_dual(const NewtonPolygon& np) { return dual_polygon(np) == np; }

bool lies_above(const NewtonPolygon& a, const NewtonPolygon& b) {
  if (a.height() != b.height() || a.total_rise() != b.total_rise()) return false;
  for (int x = 0; x <= a.height(); ++x)
    if (a.value_at(x) < b.value_at(x)) return false;
  return true;
}

WMatrix linearize(const FCrystal& c) {
  const int m = c.context().degree();
  return twisted_product(c.frobenius().matrix, m,
                         [](int k, const WMatrix& x) { return frobenius(x, k); });
}

int required_precision(int m, int h, const Rational& slope_bound) {
  const Rational need = slope_bound * (m * h);
  const auto ceil = need.numerator() / need.denominator() +
                    (need.numerator() % need.denominator() != 0 ? 1 : 0);
  return static_cast<int>(ceil) + 2;
}

NewtonPolygon newton_slopes(const FCrystal& c, Rational slope_bound) {
  const WittContext& ctx = c.context();
  const int m = ctx.degree();
  const int h = static_cast<int>(c.rank());
  require(slope_bound >= 0, ErrorKind::InvalidArgument, "slope bound must be nonnegative");
  const int need = required_precision(m, h, slope_bound);
  require(ctx.precision() >= need, ErrorKind::InsufficientPrecision,
          "precision " + std::to_string(ctx.precision()) + " below required " +
              std::to_string(need));

  const std::vector<WittElem> chi = characteristic_polynomial(linearize(c));
  // Points (i, v(c_i)); a coefficient zero to precision lies above the hull
  // because the hull never exceeds v(c_h) < n.
  std::vector<std::pair<long, long>> points;
  for (int i = 0; i <= h; ++i) {
    const auto v = chi[i].valuation();
    if (v) points.emplace_back(i, *v);
  }
  require(points.back().first == h, ErrorKind::InsufficientPrecision,
          "determinant of the linearization is zero to working precision");

  std::vector<std::pair<long, long>> hull;
  for (const auto& pt : points) {
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& a = hull.back();
      // Drop a when it lies on or above the chord from o to pt.
      const long cross = (a.first - o.first) * (pt.second - o.second) -
                         (a.second - o.second) * (pt.first - o.first);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }

  std::vector<SlopePart> parts;
  for (std::size_t k = 1; k < hull.size(); ++k) {
    const long dx = hull[k].first - hull[k - 1].first;
    const long dy = hull[k].second - hull[k - 1].second;
    const Rational slope(dy, dx * m);
    require(slope <= slope_bound, ErrorKind::SlopeBoundExceeded,
            "slope " + to_string(slope) + " exceeds bound " + to_string(slope_bound));
    parts.push_back({slope, static_cast<int>(dx)});
  }
  return NewtonPolygon(std::move(parts));
}

namespace {

int iterated_rank(const WMatrix& m, long direction) {
  const WittContext residue = m(0, 0).context().with_precision(1);
  const WMatrix bar = reduce_matrix(m, residue);
  const int h = static_cast<int>(m.rows());
  const WMatrix product = twisted_product(
      bar, h, [direction](int k, const WMatrix& x) { return frobenius(x, direction * k); });
  return static_cast<int>(rank(product));
}

}  // namespace

int p_rank(const FCrystal& c) { return iterated_rank(c.frobenius().matrix, 1); }

int v_rank(const FCrystal& c) {
  require(c.verschiebung().has_value(), ErrorKind::InvalidArgument,
          "V-rank needs the Verschiebung");
  return iterated_rank(c.verschiebung()->matrix, -1);
}

}  // namespace shimura
