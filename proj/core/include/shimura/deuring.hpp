#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shimura/fp_poly.hpp"
#include "shimura/rational.hpp"

namespace shimura {

// F_{p^2} = F_p(s), s^2 = r for the least quadratic non-residue r.
class Fp2 {
 public:
  Fp2() = default;
  Fp2(std::uint64_t p, std::uint64_t a, std::uint64_t b = 0);

  static std::uint64_t nonresidue(std::uint64_t p);
  // Element of the same field, without recomputing the non-residue.
  Fp2 make(std::uint64_t a, std::uint64_t b = 0) const;

  std::uint64_t p() const { return p_; }
  std::uint64_t re() const { return a_; }
  std::uint64_t im() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  Fp2 inverse() const;
  Fp2 pow(std::uint64_t e) const;
  std::string to_string() const;

  friend Fp2 operator+(const Fp2& x, const Fp2& y);
  friend Fp2 operator-(const Fp2& x, const Fp2& y);
  friend Fp2 operator*(const Fp2& x, const Fp2& y);
  friend bool operator==(const Fp2& x, const Fp2& y) = default;
  friend bool operator<(const Fp2& x, const Fp2& y) {
    return x.a_ != y.a_ ? x.a_ < y.a_ : x.b_ < y.b_;
  }

 private:
  std::uint64_t p_ = 5;
  std::uint64_t r_ = 2;
  std::uint64_t a_ = 0;
  std::uint64_t b_ = 0;
};

// p^2 elements in (re, im) lexicographic order.
std::vector<Fp2> all_elements(std::uint64_t p);

// y^2 = x^3 + a x + b over F_{p^2}, p >= 5.
struct CurveShort {
  Fp2 a;
  Fp2 b;

  // Throws NotPrime, InvalidArgument for p < 5, SingularCurve.
  static CurveShort make(const Fp2& a, const Fp2& b);
  std::uint64_t p() const { return a.p(); }
  Fp2 j_invariant() const;
};

CurveShort curve_with_j(const Fp2& j);

// Coefficient of x^{p-1} in (x^3 + a x + b)^{(p-1)/2}.
Fp2 hasse_invariant(const CurveShort& c);
std::uint64_t hasse_invariant(std::uint64_t p, std::uint64_t a, std::uint64_t b);
bool is_supersingular(const CurveShort& c);

// H_p(l) = sum_i C(m, i)^2 l^i, m = (p - 1)/2.
fp::Poly deuring_polynomial(std::uint64_t p);

struct SupersingularCount {
  std::size_t count = 0;
  std::vector<Fp2> j_list;       // sorted
  std::size_t by_curves = 0;     // Hasse invariant over j representatives
  std::size_t by_polynomial = 0; // roots of H_p mapped to j
};

// Throws MethodDisagreement when the two counts differ.
SupersingularCount count_supersingular(std::uint64_t p);

// u in F_{p^2}^* with u^4 a = a and u^6 b = b.
std::size_t automorphism_count(const CurveShort& c);

// Sum of 1/|Aut| over supersingular j; throws MassMismatch unless it equals
// (p - 1)/24.
Rational eichler_mass(std::uint64_t p);
Rational eichler_mass(const SupersingularCount& count);

bool squarefree_check(std::uint64_t p);

}  // namespace shimura
