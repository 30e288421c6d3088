#include "shimura/tpoly.hpp"

namespace shimura {

TPoly::TPoly(const WittContext& ctx, int truncation)
    : ctx_(ctx), n_(truncation), c_(static_cast<std::size_t>(truncation), ctx.zero()) {
  require(truncation >= 1, ErrorKind::InvalidArgument, "truncation order must be >= 1");
}

TPoly::TPoly(const WittContext& ctx, int truncation, std::vector<WittElem> coeffs)
    : TPoly(ctx, truncation) {
  require(static_cast<int>(coeffs.size()) <= truncation, ErrorKind::DimensionMismatch,
          "more coefficients than the truncation order");
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    require(coeffs[k].context() == ctx, ErrorKind::ContextMismatch,
            "coefficient from another context");
    c_[k] = std::move(coeffs[k]);
  }
}

TPoly TPoly::constant(const WittElem& a, int truncation) {
  return TPoly(a.context(), truncation, {a});
}

TPoly TPoly::monomial(const WittElem& a, int degree, int truncation) {
  TPoly out(a.context(), truncation);
  if (degree < truncation) out.c_[degree] = a;
  return out;
}

void TPoly::check_same(const TPoly& other) const {
  require(ctx_ == other.ctx_ && n_ == other.n_, ErrorKind::ContextMismatch,
          "T-polynomials over different rings");
}

bool TPoly::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

int TPoly::order() const {
  for (int k = 0; k < n_; ++k)
    if (!c_[k].is_zero()) return k;
  return -1;
}

TPoly TPoly::inverse() const {
  require(is_unit(), ErrorKind::NotInvertible, "constant term is not a unit");
  // Coefficientwise solve of (sum a_k T^k)(sum b_k T^k) = 1.
  TPoly out(ctx_, n_);
  const WittElem a0_inv = c_[0].inverse();
  out.c_[0] = a0_inv;
  for (int k = 1; k < n_; ++k) {
    WittElem acc = ctx_.zero();
    for (int j = 1; j <= k; ++j) acc = acc + c_[j] * out.c_[k - j];
    out.c_[k] = ctx_.zero() - acc * a0_inv;
  }
  return out;
}

TPoly TPoly::frobenius(long k) const {
  require(k >= 0, ErrorKind::InvalidArgument, "T-polynomials only admit forward Frobenius");
  TPoly out(ctx_, n_);
  // T^j maps to T^{j p^k}.
  long stride = 1;
  for (long i = 0; i < k && stride < n_; ++i) stride *= static_cast<long>(ctx_.p());
  for (int j = 0; j < n_; ++j) {
    if (c_[j].is_zero()) continue;
    const long target = static_cast<long>(j) * stride;
    if (j > 0 && target >= n_) break;
    out.c_[target] = c_[j].frobenius(k);
  }
  return out;
}

TPoly TPoly::reduce_to(const WittContext& lower) const {
  std::vector<WittElem> coeffs;
  coeffs.reserve(c_.size());
  for (const auto& c : c_) coeffs.push_back(c.reduce_to(lower));
  return TPoly(lower, n_, std::move(coeffs));
}

TPoly operator+(const TPoly& a, const TPoly& b) {
  a.check_same(b);
  TPoly out = a;
  for (int k = 0; k < a.n_; ++k) out.c_[k] = a.c_[k] + b.c_[k];
  return out;
}

TPoly operator-(const TPoly& a, const TPoly& b) {
  a.check_same(b);
  TPoly out = a;
  for (int k = 0; k < a.n_; ++k) out.c_[k] = a.c_[k] - b.c_[k];
  return out;
}

TPoly operator*(const TPoly& a, const TPoly& b) {
  a.check_same(b);
  TPoly out(a.ctx_, a.n_);
  for (int i = 0; i < a.n_; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (int j = 0; i + j < a.n_; ++j) {
      if (b.c_[j].is_zero()) continue;
      out.c_[i + j] = out.c_[i + j] + a.c_[i] * b.c_[j];
    }
  }
  return out;
}

bool operator==(const TPoly& a, const TPoly& b) {
  return a.ctx_ == b.ctx_ && a.n_ == b.n_ && a.c_ == b.c_;
}

}  // namespace shimura
