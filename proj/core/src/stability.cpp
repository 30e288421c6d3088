#include "shimura/stability.hpp"

#include <algorithm>

namespace shimura {

HNProfile::HNProfile(std::vector<std::pair<int, long>> pieces) : pieces_(std::move(pieces)) {
  require(!pieces_.empty(), ErrorKind::InvalidArgument, "empty HN profile");
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    require(pieces_[j].first >= 1, ErrorKind::InvalidArgument, "HN piece of rank < 1");
    if (j > 0)
      require(slope(j) < slope(j - 1), ErrorKind::InvalidArgument,
              "HN slopes must strictly decrease");
  }
}

int HNProfile::rank() const {
  int r = 0;
  for (const auto& [rank, degree] : pieces_) r += rank;
  return r;
}

long HNProfile::degree() const {
  long d = 0;
  for (const auto& [rank, degree] : pieces_) d += degree;
  return d;
}

Rational HNProfile::slope(std::size_t j) const {
  return Rational(pieces_.at(j).second, pieces_.at(j).first);
}

Rational nu(const HNProfile& profile) {
  require(!profile.pieces().empty(), ErrorKind::InvalidArgument, "empty HN profile");
  return profile.slope(0) - profile.slope(profile.pieces().size() - 1);
}

Rational instability_bound(int r, int g) {
  require(r >= 1 && g >= 0, ErrorKind::InvalidArgument, "need r >= 1 and g >= 0");
  return Rational((r - 1) * std::max(0, 2 * g - 2));
}

bool bound_check(int r, int g, const Rational& value) { return value <= instability_bound(r, g); }

BundleSlopeData frobenius_degree(std::uint64_t p, const BundleSlopeData& b) {
  BundleSlopeData out = b;
  out.degree = b.degree * static_cast<long>(p);
  return out;
}

bool Sandwich::all_equal() const {
  return std::all_of(certificate.begin(), certificate.end(),
                     [](const Inequality& i) { return i.equality(); });
}

Sandwich instability_sandwich(int g, long quotient_degree_bound) {
  require(g >= 2, ErrorKind::InvalidArgument, "genus must be >= 2");
  require(quotient_degree_bound <= 1 - g, ErrorKind::SandwichFails,
          "quotient degree bound " + std::to_string(quotient_degree_bound) +
              " exceeds 1 - g = " + std::to_string(1 - g));
  // The kernel E has degree -deg E' >= g - 1, and no line subbundle exceeds
  // g - 1, so deg E' = 1 - g is forced.
  const long q = 1 - g;
  Sandwich s;
  s.profile = HNProfile({{1, -q}, {1, q}});
  const Rational gap(-q - q);
  const Rational bound = instability_bound(2, g);
  s.certificate = {{"mu(E) - mu(E') <= nu", gap, nu(s.profile)},
                   {"nu <= 2g - 2", nu(s.profile), bound},
                   {"2g - 2 <= mu(E) - mu(E')", bound, gap}};
  return s;
}

std::string_view name(Verdict v) {
  switch (v) {
    case Verdict::HiggsSemistableMaximalHiggs: return "HIGGS_SEMISTABLE_MAXIMAL_HIGGS";
    case Verdict::StronglySemistableEtaleTrivializable:
      return "STRONGLY_SEMISTABLE_ETALE_TRIVIALIZABLE";
    case Verdict::NotStronglySemistableStable: return "NOT_STRONGLY_SEMISTABLE_STABLE";
  }
  return "UNKNOWN";
}

std::vector<StabilityVerdict> classify_summands(const PelDatum& datum) {
  std::vector<StabilityVerdict> out;
  const bool p_large = datum.p >= static_cast<std::uint64_t>(2 * datum.g);
  for (const auto& e : build_embeddings(datum)) {
    StabilityVerdict v;
    v.embedding = e;
    v.p_at_least_2g = p_large;
    if (restricts_to_tau(datum, e)) {
      v.verdict = Verdict::HiggsSemistableMaximalHiggs;
    } else if (e.orbit != 1) {
      // Fixed by F^{2 f_i}: every pull-back stays semistable of degree 0.
      v.verdict = Verdict::StronglySemistableEtaleTrivializable;
      v.nu_history.assign(datum.orbit_length(e.orbit), Rational(0));
    } else {
      const PullbackChain chain = pullback_chain(e, datum);
      const Sandwich s = instability_sandwich(datum.g, 1 - datum.g);
      v.verdict = Verdict::NotStronglySemistableStable;
      v.nu_history.assign(chain.steps - 1, Rational(0));
      v.nu_history.push_back(nu(s.profile));
      v.first_instability_step = chain.steps;
      v.saturates_bound = nu(s.profile) == instability_bound(2, datum.g);
      v.stable = true;
    }
    out.push_back(v);
  }
  return out;
}

HnHodge hn_equals_hodge(const PelDatum& datum, const Embedding& e) {
  HnHodge out;
  out.chain = pullback_chain(e, datum);
  const Sandwich s = instability_sandwich(datum.g, 1 - datum.g);
  out.hn = s.profile;
  for (const auto& summand : summand_table(datum)) {
    if (summand.embedding == out.chain.terminal)
      out.hodge = HNProfile({{summand.rank_10, summand.deg_10}, {summand.rank_01, summand.deg_01}});
  }
  out.max_subline_degree = datum.g - 1;
  out.equal = s.all_equal() && out.hn == out.hodge &&
              out.hodge.pieces().front().second == out.max_subline_degree;
  return out;
}

bool strict_ss_rank2_is_strong(long degree, int rank) {
  require(rank == 2, ErrorKind::InvalidArgument, "the rule applies to rank two bundles");
  return degree == 0;
}

}  // namespace shimura
