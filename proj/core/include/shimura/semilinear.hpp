#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "shimura/matrix.hpp"
#include "shimura/rational.hpp"
#include "shimura/witt.hpp"

namespace shimura {

using WMatrix = Matrix<WittElem>;

WMatrix zero_matrix(const WittContext& ctx, std::size_t rows, std::size_t cols);
WMatrix identity_matrix(const WittContext& ctx, std::size_t n);
WMatrix from_integers(const WittContext& ctx, std::size_t rows, std::size_t cols,
                      const std::vector<long>& entries);
// Entrywise sigma^k.
WMatrix frobenius(const WMatrix& m, long k = 1);
WMatrix reduce_matrix(const WMatrix& m, const WittContext& lower);

// v |-> matrix * sigma^twist(v).
struct SemilinearMap {
  WMatrix matrix;
  long twist = 0;

  const WittContext& context() const { return matrix(0, 0).context(); }
  std::size_t dim() const { return matrix.rows(); }
};

SemilinearMap compose(const SemilinearMap& f, const SemilinearMap& g);

// Frobenius F = M sigma and optional Verschiebung V = W sigma^{-1}.
class FCrystal {
 public:
  // Throws DimensionMismatch on shape errors and InvalidArgument when V is
  // given but F V = V F = p fails to precision.
  static FCrystal make(WMatrix frobenius, std::optional<WMatrix> verschiebung = std::nullopt);

  const WittContext& context() const { return f_.context(); }
  std::size_t rank() const { return f_.dim(); }
  const SemilinearMap& frobenius() const { return f_; }
  const std::optional<SemilinearMap>& verschiebung() const { return v_; }

  // U^{-1} M sigma(U), and correspondingly for V.
  FCrystal change_basis(const WMatrix& u) const;

 private:
  SemilinearMap f_;
  std::optional<SemilinearMap> v_;
};

// Checks F V = V F = p to working precision; false when V is absent.
bool frobenius_verschiebung_identity(const FCrystal& c);

// Dual crystal with Frobenius sigma(W)^T and Verschiebung sigma^{-1}(M)^T.
// Requires V.
FCrystal dual_crystal(const FCrystal& c);

struct SlopePart {
  Rational slope;
  int multiplicity = 0;
  friend bool operator==(const SlopePart&, const SlopePart&) = default;
};

// Sorted by slope, equal slopes merged, multiplicities positive.
class NewtonPolygon {
 public:
  NewtonPolygon() = default;
  explicit NewtonPolygon(std::vector<SlopePart> parts);

  const std::vector<SlopePart>& parts() const { return parts_; }
  int height() const;
  Rational total_rise() const;
  int multiplicity(const Rational& slope) const;
  // Break points (x, y) starting at (0, 0).
  std::vector<std::pair<int, Rational>> vertices() const;
  // Value of the polygon at integer abscissa x in [0, height].
  Rational value_at(int x) const;

  friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;

 private:
  std::vector<SlopePart> parts_;
};

NewtonPolygon merge(const NewtonPolygon& a, const NewtonPolygon& b);
NewtonPolygon dual_polygon(const NewtonPolygon& np);
bool is_self_dual(const NewtonPolygon& np);
// True when a lies on or above b with the same endpoints.
bool lies_above(const NewtonPolygon& a, const NewtonPolygon& b);

WMatrix linearize(const FCrystal& c);

// Lower convex hull of (i, v(c_i)) for the characteristic polynomial of the
// linearization, divided by the residue degree. Slopes are validated against
// slope_bound.
NewtonPolygon newton_slopes(const FCrystal& c, Rational slope_bound = Rational(1));

// Sufficient precision for newton_slopes: m * h * bound + 2.
int required_precision(int m, int h, const Rational& slope_bound);

// Rank over the residue field of A sigma(A) ... sigma^{h-1}(A) mod p.
int p_rank(const FCrystal& c);
// Stable rank of V mod p: the multiplicity of slope 1. Requires V.
int v_rank(const FCrystal& c);

}  // namespace shimura
