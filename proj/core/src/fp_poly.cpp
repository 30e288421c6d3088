#include "shimura/fp_poly.hpp"

#include <algorithm>

#include "shimura/error.hpp"

namespace shimura::fp {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % p);
}

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) result = mul(result, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return result;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  require(a % p != 0, ErrorKind::NotInvertible, "zero has no inverse in F_p");
  return pow(a, p - 2, p);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Poly::Poly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= p_;
  trim();
}

Poly Poly::monomial(std::uint64_t p, std::size_t degree, std::uint64_t c) {
  std::vector<std::uint64_t> v(degree + 1, 0);
  v[degree] = c;
  return Poly(p, std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::uint64_t Poly::operator()(std::uint64_t x) const {
  std::uint64_t acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (mul(acc, x, p_) + *it) % p_;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(p_, {});
  std::vector<std::uint64_t> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = mul(c_[i], i % p_, p_);
  return Poly(p_, std::move(d));
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  const std::uint64_t s = inv(c_.back(), p_);
  std::vector<std::uint64_t> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = mul(c_[i], s, p_);
  return Poly(p_, std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<std::uint64_t> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a.coeff(i) + b.coeff(i)) % a.p_;
  return Poly(a.p_, std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<std::uint64_t> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a.coeff(i) + a.p_ - b.coeff(i)) % a.p_;
  return Poly(a.p_, std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.p_, {});
  std::vector<std::uint64_t> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      v[i + j] = (v[i + j] + mul(a.c_[i], b.c_[j], a.p_)) % a.p_;
  }
  return Poly(a.p_, std::move(v));
}

DivMod divmod(const Poly& a, const Poly& b) {
  require(!b.is_zero(), ErrorKind::InvalidArgument, "polynomial division by zero");
  const std::uint64_t p = a.modulus();
  std::vector<std::uint64_t> rem = a.coeffs();
  const auto& den = b.coeffs();
  const std::uint64_t lead_inv = inv(den.back(), p);
  if (rem.size() < den.size()) return {Poly(p, {}), a};
  std::vector<std::uint64_t> quo(rem.size() - den.size() + 1, 0);
  for (std::size_t k = quo.size(); k-- > 0;) {
    const std::uint64_t q = mul(rem[k + den.size() - 1], lead_inv, p);
    quo[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j < den.size(); ++j)
      rem[k + j] = (rem[k + j] + p - mul(q, den[j], p)) % p;
  }
  return {Poly(p, std::move(quo)), Poly(p, std::move(rem))};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& modulus) {
  const std::uint64_t p = modulus.modulus();
  Poly result = divmod(Poly(p, {1}), modulus).remainder;
  Poly b = divmod(base, modulus).remainder;
  while (e > 0) {
    if (e & 1) result = divmod(result * b, modulus).remainder;
    b = divmod(b * b, modulus).remainder;
    e >>= 1;
  }
  return result;
}

bool is_irreducible(const Poly& f) {
  const long m = f.degree();
  if (m < 1) return false;
  if (m == 1) return true;
  const std::uint64_t p = f.modulus();
  const Poly x = Poly::monomial(p, 1);
  Poly frob = divmod(x, f).remainder;  // x^{p^k} mod f
  for (long k = 1; 2 * k <= m; ++k) {
    frob = powmod(frob, p, f);
    if (gcd(frob - x, f).degree() != 0) return false;
  }
  return true;
}

}  // namespace shimura::fp
