#pragma once

#include <cstdint>
#include <vector>

namespace shimura::fp {

// Arithmetic in the prime field F_p for word-sized p.
std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv(std::uint64_t a, std::uint64_t p);
bool is_prime(std::uint64_t n);

// Dense polynomial over F_p, coefficients lowest degree first, no trailing
// zeros. The zero polynomial has an empty coefficient vector.
class Poly {
 public:
  Poly() = default;
  Poly(std::uint64_t p, std::vector<std::uint64_t> coeffs);

  static Poly monomial(std::uint64_t p, std::size_t degree, std::uint64_t c = 1);

  std::uint64_t modulus() const noexcept { return p_; }
  const std::vector<std::uint64_t>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  // -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  std::uint64_t coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  std::uint64_t leading() const noexcept { return c_.empty() ? 0 : c_.back(); }

  std::uint64_t operator()(std::uint64_t x) const;

  Poly derivative() const;
  Poly monic() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) = default;

 private:
  void trim();

  std::uint64_t p_ = 2;
  std::vector<std::uint64_t> c_;
};

struct DivMod {
  Poly quotient;
  Poly remainder;
};

DivMod divmod(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);  // monic, or zero when both are zero
Poly powmod(const Poly& base, std::uint64_t e, const Poly& modulus);

// Irreducibility by the distinct-degree test: f of degree m is irreducible iff
// gcd(x^{p^k} - x, f) = 1 for every 1 <= k <= m/2.
bool is_irreducible(const Poly& f);

}  // namespace shimura::fp
