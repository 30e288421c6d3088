#pragma once

#include <cstdint>
#include <vector>

#include "shimura/matrix.hpp"
#include "shimura/random.hpp"

namespace shimura {

// Element of F_p[t]/(t^N); derivation d/dt is well defined because p | N.
class TruncPoly {
 public:
  TruncPoly() = default;
  TruncPoly(std::uint64_t p, int truncation, std::vector<std::uint64_t> coeffs = {});

  std::uint64_t p() const { return p_; }
  int truncation() const { return n_; }
  // Exactly `truncation` coefficients.
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  std::uint64_t coeff(int k) const { return c_.at(k); }
  void set(int k, std::uint64_t v) { c_.at(k) = v % p_; }

  bool is_zero() const;
  bool is_unit() const { return c_.front() != 0; }
  TruncPoly inverse() const;
  TruncPoly derivative() const;
  TruncPoly shift(int k) const;  // t^k * this

  friend TruncPoly operator+(const TruncPoly& a, const TruncPoly& b);
  friend TruncPoly operator-(const TruncPoly& a, const TruncPoly& b);
  friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b);
  friend bool operator==(const TruncPoly& a, const TruncPoly& b) = default;

 private:
  void check_same(const TruncPoly& other) const;

  std::uint64_t p_ = 2;
  int n_ = 0;
  std::vector<std::uint64_t> c_;
};

inline TruncPoly zero_like(const TruncPoly& x) { return TruncPoly(x.p(), x.truncation()); }
inline TruncPoly one_like(const TruncPoly& x) { return TruncPoly(x.p(), x.truncation(), {1}); }
inline bool is_zero(const TruncPoly& x) { return x.is_zero(); }
inline bool is_unit(const TruncPoly& x) { return x.is_unit(); }
inline TruncPoly unit_inverse(const TruncPoly& x) { return x.inverse(); }

using PMatrix = Matrix<TruncPoly>;
using PVector = std::vector<TruncPoly>;

PMatrix derivative(const PMatrix& m);

// nabla(d/dt) = d/dt + M on the free module of rank h over F_p[t]/(t^N).
class ConnectionModule {
 public:
  // Throws NotPrime, InvalidArgument (N not a positive multiple of p),
  // DimensionMismatch.
  static ConnectionModule make(std::uint64_t p, int truncation, PMatrix matrix);
  static ConnectionModule trivial(std::uint64_t p, int truncation, std::size_t rank);

  std::uint64_t p() const { return p_; }
  int truncation() const { return n_; }
  std::size_t rank() const { return m_.rows(); }
  const PMatrix& matrix() const { return m_; }

  PVector apply(const PVector& s) const;  // s' + M s

 private:
  std::uint64_t p_ = 2;
  int n_ = 0;
  PMatrix m_;
};

// (nabla_{d/dt})^p as a matrix, with M_{k+1} = M_k' + M M_k. Verifies
// linearity on t e_j and throws NonLinearResult if it fails.
PMatrix p_curvature(const ConnectionModule& cm);

bool is_zero_matrix(const PMatrix& m);

// Columns solve s' = -M s with s(0) = e_j; coefficients at multiples of p
// beyond the constant are set to zero. Throws PCurvatureNonzero, or
// InsufficientTruncation when the degreewise recursion is obstructed.
PMatrix horizontal_sections(const ConnectionModule& cm);

// Dimension of the initial values s(0) in F_p^h that extend to a horizontal
// section mod t^N, with all constants at multiples of p free.
std::size_t horizontal_dimension(const ConnectionModule& cm);

// M |-> g^{-1} M g + g^{-1} g'.
ConnectionModule gauge(const ConnectionModule& cm, const PMatrix& g);

// Gauging by the horizontal sections gives the trivial connection.
bool descent_roundtrip(const ConnectionModule& cm);

// g with g(0) = 1 plus random higher terms; unipotent_only keeps g upper
// unitriangular.
PMatrix random_gauge(Rng& rng, std::uint64_t p, int truncation, std::size_t rank,
                     bool unipotent_only = false);
PMatrix random_matrix(Rng& rng, std::uint64_t p, int truncation, std::size_t rank);
// g^{-1} g' for random g: p-curvature zero by construction.
ConnectionModule random_flat_trivializable(Rng& rng, std::uint64_t p, int truncation,
                                           std::size_t rank);

}  // namespace shimura
