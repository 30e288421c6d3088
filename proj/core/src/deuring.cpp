#include "shimura/deuring.hpp"

#include <algorithm>
#include <set>

#include "shimura/error.hpp"

namespace shimura {

std::uint64_t Fp2::nonresidue(std::uint64_t p) {
  require(fp::is_prime(p) && p > 2, ErrorKind::NotPrime, "F_{p^2} needs an odd prime");
  for (std::uint64_t r = 2; r < p; ++r)
    if (fp::pow(r, (p - 1) / 2, p) == p - 1) return r;
  raise(ErrorKind::InvalidArgument, "no quadratic non-residue found");
}

Fp2::Fp2(std::uint64_t p, std::uint64_t a, std::uint64_t b)
    : p_(p), r_(nonresidue(p)), a_(a % p), b_(b % p) {}

Fp2 Fp2::make(std::uint64_t a, std::uint64_t b) const {
  Fp2 z = *this;
  z.a_ = a % p_;
  z.b_ = b % p_;
  return z;
}

Fp2 operator+(const Fp2& x, const Fp2& y) {
  Fp2 z = x;
  z.a_ = (x.a_ + y.a_) % x.p_;
  z.b_ = (x.b_ + y.b_) % x.p_;
  return z;
}

Fp2 operator-(const Fp2& x, const Fp2& y) {
  Fp2 z = x;
  z.a_ = (x.a_ + x.p_ - y.a_) % x.p_;
  z.b_ = (x.b_ + x.p_ - y.b_) % x.p_;
  return z;
}

Fp2 operator*(const Fp2& x, const Fp2& y) {
  const std::uint64_t p = x.p_;
  Fp2 z = x;
  z.a_ = (fp::mul(x.a_, y.a_, p) + fp::mul(fp::mul(x.b_, y.b_, p), x.r_, p)) % p;
  z.b_ = (fp::mul(x.a_, y.b_, p) + fp::mul(x.b_, y.a_, p)) % p;
  return z;
}

Fp2 Fp2::inverse() const {
  require(!is_zero(), ErrorKind::NotInvertible, "zero has no inverse in F_{p^2}");
  // (a + bs)^{-1} = (a - bs) / (a^2 - r b^2).
  const std::uint64_t norm =
      (fp::mul(a_, a_, p_) + p_ - fp::mul(r_, fp::mul(b_, b_, p_), p_)) % p_;
  const std::uint64_t inv = fp::inv(norm, p_);
  Fp2 z = *this;
  z.a_ = fp::mul(a_, inv, p_);
  z.b_ = fp::mul((p_ - b_) % p_, inv, p_);
  return z;
}

Fp2 Fp2::pow(std::uint64_t e) const {
  Fp2 result = make(1);
  Fp2 base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::string Fp2::to_string() const {
  if (b_ == 0) return std::to_string(a_);
  return std::to_string(a_) + "+" + std::to_string(b_) + "s";
}

std::vector<Fp2> all_elements(std::uint64_t p) {
  std::vector<Fp2> out;
  out.reserve(p * p);
  const Fp2 zero(p, 0);
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b) out.push_back(zero.make(a, b));
  return out;
}

namespace {

Fp2 discriminant_part(const Fp2& a, const Fp2& b) {
  return a.make(4) * a * a * a + a.make(27) * b * b;
}

// Factorials and their inverses below p.
struct Factorials {
  std::vector<std::uint64_t> fact;
  std::vector<std::uint64_t> inv;

  explicit Factorials(std::uint64_t p) : fact(p, 1), inv(p, 1) {
    for (std::uint64_t k = 1; k < p; ++k) fact[k] = fp::mul(fact[k - 1], k, p);
    for (std::uint64_t k = 0; k < p; ++k) inv[k] = fp::inv(fact[k], p);
  }
};

Fp2 hasse_sum(const Fp2& a, const Fp2& b, const Factorials& f) {
  const std::uint64_t p = a.p();
  const std::uint64_t k = (p - 1) / 2;
  std::vector<Fp2> apow{a.make(1)}, bpow{a.make(1)};
  for (std::uint64_t i = 1; i <= p - 1; ++i) apow.push_back(apow.back() * a);
  for (std::uint64_t i = 1; i <= k; ++i) bpow.push_back(bpow.back() * b);
  Fp2 acc = a.make(0);
  // i factors x^3, j factors a x, l factors b with 3i + j = p - 1.
  for (std::uint64_t i = 0; 3 * i <= p - 1; ++i) {
    const std::uint64_t j = p - 1 - 3 * i;
    if (i + j > k) continue;
    const std::uint64_t l = k - i - j;
    const std::uint64_t coeff =
        fp::mul(fp::mul(f.fact[k], f.inv[i], p), fp::mul(f.inv[j], f.inv[l], p), p);
    acc = acc + a.make(coeff) * apow[j] * bpow[l];
  }
  return acc;
}

Fp2 j_from_lambda(const Fp2& l) {
  const Fp2 one = l.make(1);
  const Fp2 q = l * l - l + one;
  const Fp2 den = l * l * (l - one) * (l - one);
  return l.make(256) * q * q * q * den.inverse();
}

}  // namespace

CurveShort CurveShort::make(const Fp2& a, const Fp2& b) {
  require(a.p() == b.p(), ErrorKind::InvalidArgument, "coefficients over different fields");
  require(fp::is_prime(a.p()), ErrorKind::NotPrime, "characteristic must be prime");
  require(a.p() >= 5, ErrorKind::InvalidArgument, "short Weierstrass form needs p >= 5");
  require(!discriminant_part(a, b).is_zero(), ErrorKind::SingularCurve,
          "4a^3 + 27b^2 vanishes");
  return CurveShort{a, b};
}

Fp2 CurveShort::j_invariant() const {
  const Fp2 a3 = a.make(4) * a * a * a;
  return a.make(1728) * a3 * discriminant_part(a, b).inverse();
}

CurveShort curve_with_j(const Fp2& j) {
  if (j.is_zero()) return CurveShort::make(j.make(0), j.make(1));
  const Fp2 k = j.make(1728) - j;
  if (k.is_zero()) return CurveShort::make(j.make(1), j.make(0));
  return CurveShort::make(j.make(3) * j * k, j.make(2) * j * k * k);
}

Fp2 hasse_invariant(const CurveShort& c) { return hasse_sum(c.a, c.b, Factorials(c.p())); }

std::uint64_t hasse_invariant(std::uint64_t p, std::uint64_t a, std::uint64_t b) {
  const Fp2 h = hasse_invariant(CurveShort::make(Fp2(p, a), Fp2(p, b)));
  return h.re();
}

bool is_supersingular(const CurveShort& c) { return hasse_invariant(c).is_zero(); }

fp::Poly deuring_polynomial(std::uint64_t p) {
  require(fp::is_prime(p), ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  require(p >= 5, ErrorKind::InvalidArgument, "need p >= 5");
  const Factorials f(p);
  const std::uint64_t m = (p - 1) / 2;
  std::vector<std::uint64_t> coeffs;
  for (std::uint64_t i = 0; i <= m; ++i) {
    const std::uint64_t binom = fp::mul(f.fact[m], fp::mul(f.inv[i], f.inv[m - i], p), p);
    coeffs.push_back(fp::mul(binom, binom, p));
  }
  return fp::Poly(p, std::move(coeffs));
}

SupersingularCount count_supersingular(std::uint64_t p) {
  require(fp::is_prime(p), ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  require(p >= 5, ErrorKind::InvalidArgument, "need p >= 5");
  const Factorials f(p);
  const std::vector<Fp2> field = all_elements(p);

  std::vector<Fp2> by_curves;
  for (const auto& j : field) {
    const CurveShort c = curve_with_j(j);
    if (hasse_sum(c.a, c.b, f).is_zero()) by_curves.push_back(j);
  }

  const fp::Poly h = deuring_polynomial(p);
  std::set<Fp2> by_roots;
  for (const auto& l : field) {
    Fp2 acc = l.make(0);
    for (auto it = h.coeffs().rbegin(); it != h.coeffs().rend(); ++it) acc = acc * l + l.make(*it);
    if (acc.is_zero()) by_roots.insert(j_from_lambda(l));
  }

  SupersingularCount out;
  out.by_curves = by_curves.size();
  out.by_polynomial = by_roots.size();
  require(std::equal(by_curves.begin(), by_curves.end(), by_roots.begin(), by_roots.end()),
          ErrorKind::MethodDisagreement,
          "Hasse sweep found " + std::to_string(out.by_curves) + " j-invariants, H_p roots give " +
              std::to_string(out.by_polynomial));
  out.count = by_curves.size();
  out.j_list = std::move(by_curves);
  return out;
}

std::size_t automorphism_count(const CurveShort& c) {
  const std::uint64_t p = c.p();
  std::size_t count = 0;
  for (const auto& u : all_elements(p)) {
    if (u.is_zero()) continue;
    const Fp2 u2 = u * u;
    const Fp2 u4 = u2 * u2;
    if (u4 * c.a == c.a && u4 * u2 * c.b == c.b) ++count;
  }
  return count;
}

Rational eichler_mass(const SupersingularCount& count) {
  Rational mass(0);
  std::uint64_t p = 0;
  for (const auto& j : count.j_list) {
    p = j.p();
    mass += Rational(1, static_cast<std::int64_t>(automorphism_count(curve_with_j(j))));
  }
  if (p != 0) {
    const Rational expected(static_cast<std::int64_t>(p) - 1, 24);
    require(mass == expected, ErrorKind::MassMismatch,
            "mass " + to_string(mass) + " differs from (p-1)/24 = " + to_string(expected));
  }
  return mass;
}

Rational eichler_mass(std::uint64_t p) {
  const SupersingularCount count = count_supersingular(p);
  require(!count.j_list.empty(), ErrorKind::MassMismatch, "no supersingular j-invariant found");
  return eichler_mass(count);
}

bool squarefree_check(std::uint64_t p) {
  const fp::Poly h = deuring_polynomial(p);
  return fp::gcd(h, h.derivative()).degree() == 0;
}

}  // namespace shimura
