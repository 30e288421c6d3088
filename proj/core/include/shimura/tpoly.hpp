#pragma once

#include <string>
#include <vector>

#include "shimura/witt.hpp"

namespace shimura {

// Polynomials sum a_k T^k over W_n(F_q), truncated at T^N, with
// sigma(sum a_k T^k) = sum sigma(a_k) T^{pk}. T stands for the Teichmuller
// lift of the deformation parameter.
class TPoly {
 public:
  TPoly() = default;
  TPoly(const WittContext& ctx, int truncation);
  TPoly(const WittContext& ctx, int truncation, std::vector<WittElem> coeffs);
  static TPoly constant(const WittElem& a, int truncation);
  static TPoly monomial(const WittElem& a, int degree, int truncation);

  const WittContext& context() const { return ctx_; }
  int truncation() const { return n_; }
  // Exactly `truncation` coefficients.
  const std::vector<WittElem>& coeffs() const { return c_; }
  const WittElem& coeff(int k) const { return c_.at(k); }

  bool is_zero() const;
  bool is_unit() const { return c_.front().is_unit(); }
  TPoly inverse() const;
  TPoly frobenius(long k = 1) const;
  TPoly reduce_to(const WittContext& lower) const;
  // Lowest k with a nonzero coefficient, or -1.
  int order() const;
  // Drops all T-dependence.
  WittElem at_zero() const { return c_.front(); }

  friend TPoly operator+(const TPoly& a, const TPoly& b);
  friend TPoly operator-(const TPoly& a, const TPoly& b);
  friend TPoly operator*(const TPoly& a, const TPoly& b);
  friend bool operator==(const TPoly& a, const TPoly& b);

 private:
  void check_same(const TPoly& other) const;

  WittContext ctx_;
  int n_ = 0;
  std::vector<WittElem> c_;
};

inline TPoly zero_like(const TPoly& x) { return TPoly(x.context(), x.truncation()); }
inline TPoly one_like(const TPoly& x) {
  return TPoly::constant(x.context().one(), x.truncation());
}
inline bool is_zero(const TPoly& x) { return x.is_zero(); }
inline bool is_unit(const TPoly& x) { return x.is_unit(); }
inline TPoly unit_inverse(const TPoly& x) { return x.inverse(); }

}  // namespace shimura
