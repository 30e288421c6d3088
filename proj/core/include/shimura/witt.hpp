#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shimura/error.hpp"

namespace shimura {

class WittElem;

namespace detail {
struct WittData;
}

/// The truncated Witt ring W_n(F_q), q = p^m, realised as
/// (Z/p^n)[x]/(lift_poly) with lift_poly monic and irreducible mod p.
///
/// Contexts are cheap handles to shared immutable data; copies compare equal
/// when (p, m, n, lift_poly) agree.
class WittContext {
 public:
  /// Picks the first monic irreducible polynomial of degree m over F_p in the
  /// enumeration order k = 0, 1, ..., p^m - 1 with coefficient c_i equal to
  /// the i-th base-p digit of k.
  static WittContext make(std::uint64_t p, int m, int n);

  /// Uses an explicit lift polynomial (c_0, ..., c_m), which must be monic
  /// with irreducible reduction mod p.
  static WittContext with_lift_poly(std::uint64_t p, int n, std::vector<mpz_class> lift_poly);

  std::uint64_t p() const;
  int degree() const;
  int precision() const;
  const mpz_class& modulus() const;                  // p^n
  const std::vector<mpz_class>& lift_poly() const;  // c_0 .. c_m, c_m = 1

  /// Same residue field, different precision (lift_poly coefficients reduced).
  WittContext with_precision(int n) const;

  WittElem zero() const;
  WittElem one() const;
  WittElem from_integer(const mpz_class& value) const;
  WittElem generator() const;
  WittElem element(std::vector<mpz_class> coeffs) const;
  /// Residue-field element given by m digits mod p, lifted to {0..p-1}.
  WittElem lift_residue(const std::vector<std::uint64_t>& digits) const;

  friend bool operator==(const WittContext& a, const WittContext& b);

  const detail::WittData& data() const { return *d_; }
  bool valid() const noexcept { return static_cast<bool>(d_); }

 private:
  explicit WittContext(std::shared_ptr<const detail::WittData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::WittData> d_;
  friend class WittElem;
};

class WittElem {
 public:
  WittElem() = default;
  WittElem(WittContext ctx, std::vector<mpz_class> coeffs);

  const WittContext& context() const { return ctx_; }
  const std::vector<mpz_class>& coeffs() const { return c_; }

  bool is_zero() const;
  /// Units are exactly the elements with nonzero reduction mod p.
  bool is_unit() const;
  WittElem inverse() const;
  WittElem pow(const mpz_class& e) const;

  /// sigma^k, with k taken mod m (negative k gives sigma^{-1} powers).
  WittElem frobenius(long k = 1) const;

  /// Largest v < n with x in p^v W; nullopt when x = 0 mod p^n.
  std::optional<int> valuation() const;

  /// Coefficients mod p.
  std::vector<std::uint64_t> residue() const;

  /// Image in a context with the same residue field and lower precision.
  WittElem reduce_to(const WittContext& lower) const;

  std::string to_string() const;

  friend WittElem operator+(const WittElem& a, const WittElem& b);
  friend WittElem operator-(const WittElem& a, const WittElem& b);
  friend WittElem operator-(const WittElem& a);
  friend WittElem operator*(const WittElem& a, const WittElem& b);
  friend WittElem operator*(long s, const WittElem& a);
  friend bool operator==(const WittElem& a, const WittElem& b);

 private:
  void check_same(const WittElem& other) const;

  WittContext ctx_;
  std::vector<mpz_class> c_;
};

// Free-function entry points.
WittContext make_context(std::uint64_t p, int m, int n);
WittElem frobenius(const WittContext& ctx, const WittElem& x);
/// Teichmuller representative of a residue-field element (m digits mod p).
WittElem teichmuller(const WittContext& ctx, const std::vector<std::uint64_t>& residue);
std::optional<int> valuation(const WittContext& ctx, const WittElem& x);

// Ring hooks used by the generic matrix algorithms.
inline WittElem zero_like(const WittElem& x) { return x.context().zero(); }
inline WittElem one_like(const WittElem& x) { return x.context().one(); }
inline bool is_zero(const WittElem& x) { return x.is_zero(); }
inline bool is_unit(const WittElem& x) { return x.is_unit(); }
inline WittElem unit_inverse(const WittElem& x) { return x.inverse(); }

namespace detail {

struct WittData {
  std::uint64_t p = 0;
  int m = 0;
  int n = 0;
  mpz_class modulus;                 // p^n
  std::vector<mpz_class> lift;       // m + 1 coefficients, monic
  // sigma_powers[k] is the m x m matrix (column i = sigma^k(x^i)) of sigma^k,
  // stored row-major, for k = 0 .. m-1.
  std::vector<std::vector<mpz_class>> sigma_powers;
};

}  // namespace detail

}  // namespace shimura
