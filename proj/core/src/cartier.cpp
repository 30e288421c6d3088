#include "shimura/cartier.hpp"

#include "shimura/fp_poly.hpp"

namespace shimura {

TruncPoly::TruncPoly(std::uint64_t p, int truncation, std::vector<std::uint64_t> coeffs)
    : p_(p), n_(truncation), c_(static_cast<std::size_t>(truncation), 0) {
  require(truncation >= 1, ErrorKind::InvalidArgument, "truncation order must be >= 1");
  require(static_cast<int>(coeffs.size()) <= truncation, ErrorKind::DimensionMismatch,
          "more coefficients than the truncation order");
  for (std::size_t k = 0; k < coeffs.size(); ++k) c_[k] = coeffs[k] % p_;
}

void TruncPoly::check_same(const TruncPoly& other) const {
  require(p_ == other.p_ && n_ == other.n_, ErrorKind::ContextMismatch,
          "truncated polynomials over different rings");
}

bool TruncPoly::is_zero() const {
  for (auto c : c_)
    if (c != 0) return false;
  return true;
}

TruncPoly TruncPoly::inverse() const {
  require(is_unit(), ErrorKind::NotInvertible, "constant term vanishes");
  TruncPoly out(p_, n_);
  const std::uint64_t inv0 = fp::inv(c_[0], p_);
  out.c_[0] = inv0;
  for (int k = 1; k < n_; ++k) {
    std::uint64_t acc = 0;
    for (int j = 1; j <= k; ++j) acc = (acc + fp::mul(c_[j], out.c_[k - j], p_)) % p_;
    out.c_[k] = fp::mul((p_ - acc) % p_, inv0, p_);
  }
  return out;
}

TruncPoly TruncPoly::derivative() const {
  TruncPoly out(p_, n_);
  for (int k = 1; k < n_; ++k) out.c_[k - 1] = fp::mul(c_[k], k % p_, p_);
  return out;
}

TruncPoly TruncPoly::shift(int k) const {
  TruncPoly out(p_, n_);
  for (int j = 0; j + k < n_; ++j) out.c_[j + k] = c_[j];
  return out;
}

TruncPoly operator+(const TruncPoly& a, const TruncPoly& b) {
  a.check_same(b);
  TruncPoly out = a;
  for (int k = 0; k < a.n_; ++k) out.c_[k] = (a.c_[k] + b.c_[k]) % a.p_;
  return out;
}

TruncPoly operator-(const TruncPoly& a, const TruncPoly& b) {
  a.check_same(b);
  TruncPoly out = a;
  for (int k = 0; k < a.n_; ++k) out.c_[k] = (a.c_[k] + a.p_ - b.c_[k]) % a.p_;
  return out;
}

TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
  a.check_same(b);
  TruncPoly out(a.p_, a.n_);
  for (int i = 0; i < a.n_; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; i + j < a.n_; ++j)
      out.c_[i + j] = (out.c_[i + j] + fp::mul(a.c_[i], b.c_[j], a.p_)) % a.p_;
  }
  return out;
}

PMatrix derivative(const PMatrix& m) {
  return m.map([](const TruncPoly& x) { return x.derivative(); });
}

ConnectionModule ConnectionModule::make(std::uint64_t p, int truncation, PMatrix matrix) {
  require(fp::is_prime(p), ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  require(truncation >= static_cast<int>(p) && truncation % static_cast<int>(p) == 0,
          ErrorKind::InvalidArgument, "truncation order must be a positive multiple of p");
  require(matrix.square() && !matrix.empty(), ErrorKind::DimensionMismatch,
          "connection matrix must be square and nonempty");
  for (const auto& x : matrix.data())
    require(x.p() == p && x.truncation() == truncation, ErrorKind::ContextMismatch,
            "connection entries over another ring");
  ConnectionModule cm;
  cm.p_ = p;
  cm.n_ = truncation;
  cm.m_ = std::move(matrix);
  return cm;
}

ConnectionModule ConnectionModule::trivial(std::uint64_t p, int truncation, std::size_t rank) {
  return make(p, truncation, PMatrix(rank, rank, TruncPoly(p, truncation)));
}

PVector ConnectionModule::apply(const PVector& s) const {
  require(s.size() == rank(), ErrorKind::DimensionMismatch, "section has the wrong rank");
  PVector out;
  for (std::size_t i = 0; i < rank(); ++i) {
    TruncPoly acc = s[i].derivative();
    for (std::size_t j = 0; j < rank(); ++j) acc = acc + m_(i, j) * s[j];
    out.push_back(acc);
  }
  return out;
}

bool is_zero_matrix(const PMatrix& m) {
  for (const auto& x : m.data())
    if (!x.is_zero()) return false;
  return true;
}

PMatrix p_curvature(const ConnectionModule& cm) {
  const PMatrix& m = cm.matrix();
  PMatrix mk = m;
  for (std::uint64_t k = 1; k < cm.p(); ++k) mk = derivative(mk) + m * mk;

  // The p-fold composite must be linear over functions: compare on t e_j.
  const TruncPoly zero(cm.p(), cm.truncation());
  const TruncPoly t = TruncPoly(cm.p(), cm.truncation(), {1}).shift(1);
  for (std::size_t j = 0; j < cm.rank(); ++j) {
    PVector s(cm.rank(), zero);
    s[j] = t;
    for (std::uint64_t k = 0; k < cm.p(); ++k) s = cm.apply(s);
    for (std::size_t i = 0; i < cm.rank(); ++i)
      require(s[i] == t * mk(i, j), ErrorKind::NonLinearResult,
              "nabla^p is not linear on t e_" + std::to_string(j));
  }
  return mk;
}

namespace {

// Coefficient matrices M_k over F_p.
std::vector<std::vector<std::vector<std::uint64_t>>> coefficient_matrices(const PMatrix& m) {
  const std::size_t h = m.rows();
  const int n = m(0, 0).truncation();
  std::vector<std::vector<std::vector<std::uint64_t>>> out(
      n, std::vector<std::vector<std::uint64_t>>(h, std::vector<std::uint64_t>(h, 0)));
  for (int k = 0; k < n; ++k)
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) out[k][i][j] = m(i, j).coeff(k);
  return out;
}

using FpRows = std::vector<std::vector<std::uint64_t>>;

// Row-reduces in place and returns the pivot column of each nonzero row.
std::vector<std::size_t> row_reduce(FpRows& a, std::uint64_t p) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    const std::uint64_t inv = fp::inv(a[r][c], p);
    for (auto& x : a[r]) x = fp::mul(x, inv, p);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::uint64_t f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = (a[i][j] + p - fp::mul(f, a[r][j], p)) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  return pivots;
}

}  // namespace

PMatrix horizontal_sections(const ConnectionModule& cm) {
  require(is_zero_matrix(p_curvature(cm)), ErrorKind::PCurvatureNonzero,
          "p-curvature is nonzero; no full set of horizontal sections");
  const std::uint64_t p = cm.p();
  const int n = cm.truncation();
  const std::size_t h = cm.rank();
  const auto mc = coefficient_matrices(cm.matrix());
  PMatrix out(h, h, TruncPoly(p, n));
  for (std::size_t col = 0; col < h; ++col) {
    std::vector<std::vector<std::uint64_t>> s(n, std::vector<std::uint64_t>(h, 0));
    s[0][col] = 1;
    for (int k = 0; k < n; ++k) {
      // r = (M s)_k
      std::vector<std::uint64_t> r(h, 0);
      for (int a = 0; a <= k; ++a)
        for (std::size_t i = 0; i < h; ++i)
          for (std::size_t j = 0; j < h; ++j)
            r[i] = (r[i] + fp::mul(mc[a][i][j], s[k - a][j], p)) % p;
      if ((k + 1) % static_cast<int>(p) == 0) {
        for (auto x : r)
          require(x == 0, ErrorKind::InsufficientTruncation,
                  "degree " + std::to_string(k) + " obstruction does not vanish");
        continue;  // s_{k+1} is a free constant, fixed to 0
      }
      const std::uint64_t inv = fp::inv(static_cast<std::uint64_t>(k + 1) % p, p);
      for (std::size_t i = 0; i < h; ++i) s[k + 1][i] = fp::mul((p - r[i]) % p, inv, p);
    }
    for (std::size_t i = 0; i < h; ++i)
      for (int k = 0; k < n; ++k) out(i, col).set(k, s[k][i]);
  }
  return out;
}

std::size_t horizontal_dimension(const ConnectionModule& cm) {
  const std::uint64_t p = cm.p();
  const int n = cm.truncation();
  const std::size_t h = cm.rank();
  const int blocks = n / static_cast<int>(p);
  const std::size_t unknowns = h * blocks;  // s_0, s_p, ..., s_{N-p}
  const auto mc = coefficient_matrices(cm.matrix());

  // s[k][i] is a row vector over the unknowns.
  std::vector<FpRows> s(n, FpRows(h, std::vector<std::uint64_t>(unknowns, 0)));
  for (std::size_t i = 0; i < h; ++i) s[0][i][i] = 1;
  FpRows constraints;
  for (int k = 0; k < n; ++k) {
    FpRows r(h, std::vector<std::uint64_t>(unknowns, 0));
    for (int a = 0; a <= k; ++a)
      for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) {
          if (mc[a][i][j] == 0) continue;
          for (std::size_t u = 0; u < unknowns; ++u)
            r[i][u] = (r[i][u] + fp::mul(mc[a][i][j], s[k - a][j][u], p)) % p;
        }
    if ((k + 1) % static_cast<int>(p) == 0) {
      for (auto& row : r) constraints.push_back(row);
      if (k + 1 < n) {
        const std::size_t block = static_cast<std::size_t>((k + 1) / static_cast<int>(p));
        for (std::size_t i = 0; i < h; ++i) s[k + 1][i][block * h + i] = 1;
      }
      continue;
    }
    const std::uint64_t inv = fp::inv(static_cast<std::uint64_t>(k + 1) % p, p);
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t u = 0; u < unknowns; ++u)
        s[k + 1][i][u] = fp::mul((p - r[i][u]) % p, inv, p);
  }

  // Nullspace basis of the constraints, then the rank of its s_0 part.
  const std::vector<std::size_t> pivots = row_reduce(constraints, p);
  std::vector<bool> is_pivot(unknowns, false);
  for (auto c : pivots) is_pivot[c] = true;
  FpRows initial;
  for (std::size_t free = 0; free < unknowns; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint64_t> v(unknowns, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = (p - constraints[r][free]) % p;
    initial.emplace_back(v.begin(), v.begin() + static_cast<long>(h));
  }
  return row_reduce(initial, p).size();
}

ConnectionModule gauge(const ConnectionModule& cm, const PMatrix& g) {
  const PMatrix g_inv = inverse(g);
  return ConnectionModule::make(cm.p(), cm.truncation(),
                                g_inv * cm.matrix() * g + g_inv * derivative(g));
}

bool descent_roundtrip(const ConnectionModule& cm) {
  const PMatrix s = horizontal_sections(cm);
  return is_zero_matrix(gauge(cm, s).matrix());
}

namespace {

TruncPoly random_poly(Rng& rng, std::uint64_t p, int truncation, int from_degree) {
  TruncPoly x(p, truncation);
  for (int k = from_degree; k < truncation; ++k) x.set(k, uniform_below(rng, p));
  return x;
}

}  // namespace

PMatrix random_matrix(Rng& rng, std::uint64_t p, int truncation, std::size_t rank) {
  PMatrix m(rank, rank, TruncPoly(p, truncation));
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j) m(i, j) = random_poly(rng, p, truncation, 0);
  return m;
}

PMatrix random_gauge(Rng& rng, std::uint64_t p, int truncation, std::size_t rank,
                     bool unipotent_only) {
  const TruncPoly one(p, truncation, {1});
  PMatrix g(rank, rank, TruncPoly(p, truncation));
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = 0; j < rank; ++j) {
      if (unipotent_only) {
        if (i == j) g(i, j) = one;
        if (j > i) g(i, j) = random_poly(rng, p, truncation, 0);
      } else {
        g(i, j) = random_poly(rng, p, truncation, 1);
        if (i == j) g(i, j) = g(i, j) + one;
      }
    }
  }
  return g;
}

ConnectionModule random_flat_trivializable(Rng& rng, std::uint64_t p, int truncation,
                                           std::size_t rank) {
  return gauge(ConnectionModule::trivial(p, truncation, rank),
               random_gauge(rng, p, truncation, rank));
}

}  // namespace shimura
