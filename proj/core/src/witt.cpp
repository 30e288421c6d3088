#include "shimura/witt.hpp"

#include <sstream>

#include "shimura/fp_poly.hpp"

namespace shimura {

namespace {

mpz_class mod(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class power(std::uint64_t p, int n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(n));
  return r;
}

// Multiplies two coefficient vectors in (Z/p^n)[x]/(lift).
std::vector<mpz_class> mul_reduce(const detail::WittData& d, const std::vector<mpz_class>& a,
                                  const std::vector<mpz_class>& b) {
  const int m = d.m;
  std::vector<mpz_class> prod(2 * m - 1, 0);
  for (int i = 0; i < m; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < m; ++j) prod[i + j] += a[i] * b[j];
  }
  for (int k = 2 * m - 2; k >= m; --k) {
    if (prod[k] == 0) continue;
    const mpz_class c = mod(prod[k], d.modulus);
    for (int j = 0; j < m; ++j) prod[k - m + j] -= c * d.lift[j];
    prod[k] = 0;
  }
  std::vector<mpz_class> out(m);
  for (int i = 0; i < m; ++i) out[i] = mod(prod[i], d.modulus);
  return out;
}

std::vector<mpz_class> apply_matrix(const detail::WittData& d, const std::vector<mpz_class>& mat,
                                    const std::vector<mpz_class>& v) {
  const int m = d.m;
  std::vector<mpz_class> out(m, 0);
  for (int r = 0; r < m; ++r) {
    mpz_class acc = 0;
    for (int i = 0; i < m; ++i) acc += mat[r * m + i] * v[i];
    out[r] = mod(acc, d.modulus);
  }
  return out;
}

void validate_lift(std::uint64_t p, const std::vector<mpz_class>& lift) {
  require(lift.size() >= 2, ErrorKind::DegreeZero, "lift polynomial must have degree >= 1");
  std::vector<std::uint64_t> residues;
  residues.reserve(lift.size());
  const mpz_class pz(static_cast<unsigned long>(p));
  for (const auto& c : lift) residues.push_back(mod(c, pz).get_ui());
  require(residues.back() == 1, ErrorKind::InvalidArgument, "lift polynomial must be monic");
  require(fp::is_irreducible(fp::Poly(p, residues)), ErrorKind::InvalidArgument,
          "lift polynomial is not irreducible mod p");
}

}  // namespace

WittContext WittContext::with_lift_poly(std::uint64_t p, int n, std::vector<mpz_class> lift) {
  require(fp::is_prime(p), ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  require(n >= 1, ErrorKind::InvalidArgument, "precision must be >= 1");
  validate_lift(p, lift);
  const int m = static_cast<int>(lift.size()) - 1;

  auto data = std::make_shared<detail::WittData>();
  data->p = p;
  data->m = m;
  data->n = n;
  data->modulus = power(p, n);
  for (auto& c : lift) c = mod(c, data->modulus);
  data->lift = lift;

  // sigma(x) is the root of lift congruent to x^p mod p: Hensel/Newton from x^p.
  WittContext bare(data);
  WittElem y = bare.generator().pow(mpz_class(static_cast<unsigned long>(p)));
  auto eval = [&](const WittElem& t, bool derivative) {
    WittElem acc = bare.zero();
    for (int i = m; i >= (derivative ? 1 : 0); --i) {
      const long weight = derivative ? i : 1;
      acc = acc * t + weight * bare.from_integer(lift[i]);
    }
    return acc;
  };
  for (int iter = 0; iter <= 2 * n + 2; ++iter) {
    const WittElem fy = eval(y, false);
    if (fy.is_zero()) break;
    y = y - fy * eval(y, true).inverse();
  }
  require(eval(y, false).is_zero(), ErrorKind::InvalidArgument, "Hensel lift did not converge");

  // Column i of the sigma matrix is sigma(x)^i = y^i.
  std::vector<mpz_class> sigma(m * m, 0);
  WittElem col = bare.one();
  for (int i = 0; i < m; ++i) {
    for (int r = 0; r < m; ++r) sigma[r * m + i] = col.coeffs()[r];
    col = col * y;
  }
  std::vector<mpz_class> ident(m * m, 0);
  for (int i = 0; i < m; ++i) ident[i * m + i] = 1;
  data->sigma_powers.push_back(ident);
  for (int k = 1; k < m; ++k) {
    const auto& prev = data->sigma_powers.back();
    std::vector<mpz_class> next(m * m, 0);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        mpz_class acc = 0;
        for (int j = 0; j < m; ++j) acc += sigma[r * m + j] * prev[j * m + c];
        next[r * m + c] = mod(acc, data->modulus);
      }
    data->sigma_powers.push_back(std::move(next));
  }
  return WittContext(std::move(data));
}

WittContext WittContext::make(std::uint64_t p, int m, int n) {
  require(fp::is_prime(p), ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  require(m >= 1, ErrorKind::DegreeZero, "residue degree must be >= 1");
  require(n >= 1, ErrorKind::InvalidArgument, "precision must be >= 1");
  std::vector<std::uint64_t> digits(m + 1, 0);
  digits[m] = 1;
  for (;;) {
    if (fp::is_irreducible(fp::Poly(p, digits))) break;
    int i = 0;
    while (i < m && ++digits[i] == p) digits[i++] = 0;
    require(i < m, ErrorKind::InvalidArgument, "no irreducible polynomial found");
  }
  std::vector<mpz_class> lift;
  for (auto c : digits) lift.emplace_back(static_cast<unsigned long>(c));
  return with_lift_poly(p, n, std::move(lift));
}

std::uint64_t WittContext::p() const { return d_->p; }
int WittContext::degree() const { return d_->m; }
int WittContext::precision() const { return d_->n; }
const mpz_class& WittContext::modulus() const { return d_->modulus; }
const std::vector<mpz_class>& WittContext::lift_poly() const { return d_->lift; }

WittContext WittContext::with_precision(int n) const {
  if (n == d_->n) return *this;
  std::vector<mpz_class> lift = d_->lift;
  if (n < d_->n)
    for (auto& c : lift) c = mod(c, power(d_->p, n));
  return with_lift_poly(d_->p, n, std::move(lift));
}

WittElem WittContext::zero() const { return WittElem(*this, std::vector<mpz_class>(d_->m, 0)); }

WittElem WittContext::one() const {
  std::vector<mpz_class> c(d_->m, 0);
  c[0] = 1;
  return WittElem(*this, std::move(c));
}

WittElem WittContext::from_integer(const mpz_class& value) const {
  std::vector<mpz_class> c(d_->m, 0);
  c[0] = value;
  return WittElem(*this, std::move(c));
}

WittElem WittContext::generator() const {
  std::vector<mpz_class> c(d_->m, 0);
  if (d_->m == 1) {
    c[0] = -d_->lift[0];  // root of x + c_0
  } else {
    c[1] = 1;
  }
  return WittElem(*this, std::move(c));
}

WittElem WittContext::element(std::vector<mpz_class> coeffs) const {
  require(static_cast<int>(coeffs.size()) == d_->m, ErrorKind::DimensionMismatch,
          "element needs exactly m coefficients");
  return WittElem(*this, std::move(coeffs));
}

WittElem WittContext::lift_residue(const std::vector<std::uint64_t>& digits) const {
  require(static_cast<int>(digits.size()) == d_->m, ErrorKind::DimensionMismatch,
          "residue needs exactly m digits");
  std::vector<mpz_class> c;
  for (auto v : digits) c.emplace_back(static_cast<unsigned long>(v % d_->p));
  return WittElem(*this, std::move(c));
}

bool operator==(const WittContext& a, const WittContext& b) {
  if (a.d_ == b.d_) return true;
  if (!a.d_ || !b.d_) return false;
  return a.d_->p == b.d_->p && a.d_->m == b.d_->m && a.d_->n == b.d_->n &&
         a.d_->lift == b.d_->lift;
}

WittElem::WittElem(WittContext ctx, std::vector<mpz_class> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
  require(ctx_.valid(), ErrorKind::ContextMismatch, "element without context");
  require(static_cast<int>(c_.size()) == ctx_.degree(), ErrorKind::DimensionMismatch,
          "element needs exactly m coefficients");
  for (auto& c : c_) c = mod(c, ctx_.modulus());
}

void WittElem::check_same(const WittElem& other) const {
  require(ctx_.valid() && other.ctx_.valid() && ctx_ == other.ctx_, ErrorKind::ContextMismatch,
          "Witt elements from different contexts");
}

bool WittElem::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool WittElem::is_unit() const {
  const mpz_class pz(static_cast<unsigned long>(ctx_.p()));
  for (const auto& c : c_)
    if (mod(c, pz) != 0) return true;
  return false;
}

WittElem WittElem::pow(const mpz_class& e) const {
  require(e >= 0, ErrorKind::InvalidArgument, "negative exponent");
  WittElem result = ctx_.one();
  WittElem base = *this;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) result = result * base;
    if (i + 1 < bits) base = base * base;
  }
  return result;
}

WittElem WittElem::inverse() const {
  require(is_unit(), ErrorKind::NotInvertible, "element is not a unit");
  // a^{q-2} inverts a mod p; Newton steps y <- y(2 - a y) double the precision.
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), ctx_.p(), static_cast<unsigned long>(ctx_.degree()));
  WittElem y = pow(q - 2);
  const WittElem two = ctx_.from_integer(2);
  for (int prec = 1; prec < ctx_.precision(); prec *= 2) y = y * (two - *this * y);
  return y;
}

WittElem WittElem::frobenius(long k) const {
  const auto& d = ctx_.data();
  long r = k % d.m;
  if (r < 0) r += d.m;
  if (r == 0) return *this;
  return WittElem(ctx_, apply_matrix(d, d.sigma_powers[r], c_));
}

std::optional<int> WittElem::valuation() const {
  std::optional<int> best;
  const mpz_class pz(static_cast<unsigned long>(ctx_.p()));
  for (const auto& c : c_) {
    if (c == 0) continue;
    mpz_class t = c;
    int v = 0;
    while (mpz_divisible_p(t.get_mpz_t(), pz.get_mpz_t())) {
      t /= pz;
      ++v;
    }
    if (!best || v < *best) best = v;
  }
  return best;
}

std::vector<std::uint64_t> WittElem::residue() const {
  std::vector<std::uint64_t> out;
  const mpz_class pz(static_cast<unsigned long>(ctx_.p()));
  for (const auto& c : c_) out.push_back(mod(c, pz).get_ui());
  return out;
}

WittElem WittElem::reduce_to(const WittContext& lower) const {
  require(lower.p() == ctx_.p() && lower.degree() == ctx_.degree() &&
              lower.precision() <= ctx_.precision(),
          ErrorKind::ContextMismatch, "target context is not a reduction of the source");
  for (int i = 0; i <= lower.degree(); ++i)
    require(mod(ctx_.lift_poly()[i] - lower.lift_poly()[i], lower.modulus()) == 0,
            ErrorKind::ContextMismatch, "lift polynomials disagree");
  return WittElem(lower, c_);
}

std::string WittElem::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i].get_str();
  os << ']';
  return os.str();
}

WittElem operator+(const WittElem& a, const WittElem& b) {
  a.check_same(b);
  std::vector<mpz_class> c(a.c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] + b.c_[i];
  return WittElem(a.ctx_, std::move(c));
}

WittElem operator-(const WittElem& a, const WittElem& b) {
  a.check_same(b);
  std::vector<mpz_class> c(a.c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] - b.c_[i];
  return WittElem(a.ctx_, std::move(c));
}

WittElem operator-(const WittElem& a) {
  std::vector<mpz_class> c(a.c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.c_[i];
  return WittElem(a.ctx_, std::move(c));
}

WittElem operator*(const WittElem& a, const WittElem& b) {
  a.check_same(b);
  if (a.ctx_.degree() == 1) return WittElem(a.ctx_, {a.c_[0] * b.c_[0]});
  return WittElem(a.ctx_, mul_reduce(a.ctx_.data(), a.c_, b.c_));
}

WittElem operator*(long s, const WittElem& a) {
  std::vector<mpz_class> c(a.c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] * s;
  return WittElem(a.ctx_, std::move(c));
}

bool operator==(const WittElem& a, const WittElem& b) {
  return a.ctx_ == b.ctx_ && a.c_ == b.c_;
}

WittContext make_context(std::uint64_t p, int m, int n) { return WittContext::make(p, m, n); }

WittElem frobenius(const WittContext& ctx, const WittElem& x) {
  require(x.context() == ctx, ErrorKind::ContextMismatch, "element from another context");
  return x.frobenius(1);
}

WittElem teichmuller(const WittContext& ctx, const std::vector<std::uint64_t>& residue) {
  WittElem x = ctx.lift_residue(residue);
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), ctx.p(), static_cast<unsigned long>(ctx.degree()));
  // Each q-th power gains one p-adic digit of agreement with the fixed point.
  for (int i = 0; i < ctx.precision(); ++i) x = x.pow(q);
  return x;
}

std::optional<int> valuation(const WittContext& ctx, const WittElem& x) {
  require(x.context() == ctx, ErrorKind::ContextMismatch, "element from another context");
  return x.valuation();
}

}  // namespace shimura
