#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shimura/pel.hpp"
#include "shimura/random.hpp"
#include "shimura/semilinear.hpp"
#include "shimura/tpoly.hpp"

namespace shimura {

using TMatrix = Matrix<TPoly>;

// X or Y basis vector of the rank-two piece D_chi.
struct BasisVector {
  Embedding character;
  bool is_y = false;
  friend bool operator==(const BasisVector&, const BasisVector&) = default;
};

// Basis of the display: t spans the first h0 columns (the A, C columns),
// l the remaining h1.
struct DisplayBasis {
  std::vector<BasisVector> t;
  std::vector<BasisVector> l;
};

class Display {
 public:
  // Throws NonUnitWhereUnitRequired unless (A B; C D) is invertible.
  static Display make(WMatrix a, WMatrix b, WMatrix c, WMatrix d,
                      std::optional<DisplayBasis> basis = std::nullopt);

  const WittContext& context() const { return a_(0, 0).context(); }
  std::size_t h0() const { return a_.rows(); }
  std::size_t h1() const { return d_.rows(); }
  const WMatrix& a() const { return a_; }
  const WMatrix& b() const { return b_; }
  const WMatrix& c() const { return c_; }
  const WMatrix& d() const { return d_; }
  const std::optional<DisplayBasis>& basis() const { return basis_; }

  WMatrix full() const;               // (A B; C D)
  WMatrix frobenius_matrix() const;   // (A pB; C pD)
  // F from frobenius_matrix(), V = sigma^{-1}(diag(p, 1) (A B; C D)^{-1}).
  FCrystal crystal() const;

 private:
  WMatrix a_, b_, c_, d_;
  std::optional<DisplayBasis> basis_;
};

// (A + TC, p(B + TD); C, pD) with T scalar, truncated at T^N.
class DeformedDisplay {
 public:
  DeformedDisplay(Display base, int truncation);

  const Display& base() const { return base_; }
  int truncation() const { return n_; }
  const TMatrix& a_plus_tc() const { return atc_; }
  TMatrix frobenius_matrix() const;
  // T = 0 specialization of the blocks A + TC, B + TD, C, D.
  Display at_zero() const;

 private:
  Display base_;
  int n_;
  TMatrix atc_;
  TMatrix btd_;
};

// N defaults to p^2 + 1 when truncation is 0. Requires N >= 2.
DeformedDisplay deform(const Display& disp, int truncation = 0);

TMatrix lift_matrix(const WMatrix& m, int truncation);
TMatrix frobenius(const TMatrix& m, long k);

// M1 sigma(M2) == M2 M1.
bool endo_compat(const TMatrix& m1, const TMatrix& m2);
bool endo_compat(const WMatrix& m1, const WMatrix& m2);

// (A + TC) sigma(A + TC) ... sigma^{s-1}(A + TC), read mod p.
TMatrix hasse_witt_iterate(const DeformedDisplay& dd, int s);

// Entry of the s-fold Hasse-Witt matrix from the T-line of source to the
// T-line of target. Throws SummandNotRankOne unless each character carries
// exactly one T basis vector; InvalidArgument without a labelled basis.
TPoly degeneracy_equation(const DeformedDisplay& dd, const Embedding& source,
                          const Embedding& target, int s);

// Order of vanishing at t = 0; throws IdenticallyZeroToTruncation.
int multiplicity_at_zero(const TPoly& eq);

// Named slots a1, b1, c1, d1, a2, b2, e1, f1 and their starred versions.
const std::vector<std::string>& template_parameter_names();
using TemplateParams = std::map<std::string, WittElem>;

// Datum p, n = 2, f = [2] underlying the worked 8 x 8 display.
PelDatum template_datum(std::uint64_t p, int g = 2);
DisplayBasis template_basis(const PelDatum& datum);

// The 8 x 8 display with the chain sparsity of A and C. B and D are filled
// per character block: next to (a2, b2) the column is (0, 1) when a2 is a
// unit and (1, 0) otherwise (likewise beside (e1, f1)); blocks met only by
// B and D columns get the identity.
Display pel_display_template(const PelDatum& datum, const TemplateParams& params);
TemplateParams random_template_params(Rng& rng, const WittContext& ctx);

// T: orbit 1 in position order (X for uniformizing phi, else X, Y), then
// Y of phibar_1, phibar_1*, then X, Y for every other orbit. L likewise with
// Y of uniformizing phi, X, Y of phibar, X of phibar_1, phibar_1*.
DisplayBasis chain_basis(const PelDatum& datum);
// Random display whose nonzero entries send chi-columns to sigma(chi)-rows,
// with each 2 x 2 character block invertible.
Display chain_display(Rng& rng, const WittContext& ctx, const PelDatum& datum);

// diag over t then l of sigma^{pos}(a1) for phi and sigma^{pos}(a2) for
// phibar. The residue degree must be a multiple of every 2 f_i.
WMatrix character_matrix(const PelDatum& datum, const DisplayBasis& basis, const WittElem& a1,
                         const WittElem& a2);

}  // namespace shimura
