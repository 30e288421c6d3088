#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shimura/pel.hpp"
#include "shimura/rational.hpp"

namespace shimura {

struct BundleSlopeData {
  int rank = 1;
  long degree = 0;
  int genus = 2;
  std::optional<Embedding> label;
};

// Graded pieces (rank_j, degree_j) with strictly decreasing slopes.
class HNProfile {
 public:
  HNProfile() = default;
  // Throws InvalidArgument unless ranks are positive and slopes decrease.
  explicit HNProfile(std::vector<std::pair<int, long>> pieces);

  const std::vector<std::pair<int, long>>& pieces() const { return pieces_; }
  int rank() const;
  long degree() const;
  Rational slope(std::size_t j) const;

  friend bool operator==(const HNProfile&, const HNProfile&) = default;

 private:
  std::vector<std::pair<int, long>> pieces_;
};

// mu_max - mu_min.
Rational nu(const HNProfile& profile);

// value <= (r - 1) max(0, 2g - 2).
bool bound_check(int r, int g, const Rational& value);
Rational instability_bound(int r, int g);

BundleSlopeData frobenius_degree(std::uint64_t p, const BundleSlopeData& b);

struct Inequality {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool equality() const { return lhs == rhs; }
};

struct Sandwich {
  HNProfile profile;
  // mu(E) - mu(E') <= nu <= 2g - 2 <= mu(E) - mu(E'), each recorded as lhs <= rhs.
  std::vector<Inequality> certificate;
  bool all_equal() const;
};

// Rank-two degree-zero bundle surjecting onto a line bundle of degree at most
// quotient_degree_bound. Throws SandwichFails when the bound exceeds 1 - g.
Sandwich instability_sandwich(int g, long quotient_degree_bound);

enum class Verdict {
  HiggsSemistableMaximalHiggs,
  StronglySemistableEtaleTrivializable,
  NotStronglySemistableStable,
};
std::string_view name(Verdict v);

struct StabilityVerdict {
  Embedding embedding;
  Verdict verdict = Verdict::StronglySemistableEtaleTrivializable;
  // nu(F^{k*} E) for k = 1, 2, ...; empty for uniformizing summands.
  std::vector<Rational> nu_history;
  std::optional<int> first_instability_step;
  bool saturates_bound = false;
  bool stable = false;
  // The Higgs-semistability statements assume p >= 2g.
  bool assumes_p_at_least_2g = true;
  bool p_at_least_2g = false;
};

std::vector<StabilityVerdict> classify_summands(const PelDatum& datum);

struct HnHodge {
  HNProfile hn;
  HNProfile hodge;
  bool equal = false;
  long max_subline_degree = 0;  // g - 1, attained by the Hodge line
  PullbackChain chain;
};

HnHodge hn_equals_hodge(const PelDatum& datum, const Embedding& e);

// A strictly semistable rank two bundle of degree zero is strongly semistable.
bool strict_ss_rank2_is_strong(long degree, int rank = 2);

}  // namespace shimura
