#include "votelab/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace votelab {

namespace {

// Acklam's rational approximation of the lower-tail quantile (relative error
// below 1.2e-9), polished by one Halley step against erfc.
double lower_tail_quantile(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLowRegion = 0.02425;

  double x;
  if (p < kLowRegion) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }

  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error("inverse_normal_cdf requires 0 < p < 1");
  if (p == 0.5) return 0.0;
  // 1 - p is exact for p >= 0.5, so the two tails mirror each other exactly.
  return p < 0.5 ? lower_tail_quantile(p) : -lower_tail_quantile(1.0 - p);
}

VoterSet percentile_grid(std::size_t n) {
  if (n == 0) throw Error("percentile grid needs at least one voter");
  VoterSet set;
  set.positions.resize(n);
  const double denom = static_cast<double>(n + 1);
  for (std::size_t i = 1; i <= (n + 1) / 2; ++i) {
    const double z = inverse_normal_cdf(static_cast<double>(i) / denom);
    set.positions[i - 1] = z;
    set.positions[n - i] = -z;
  }
  if (n % 2 == 1) set.positions[n / 2] = 0.0;
  return set;
}

VoterSet sample_voters(std::size_t n, Rng& rng) {
  if (n == 0) throw Error("sample needs at least one voter");
  VoterSet set;
  set.positions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) set.positions.push_back(inverse_normal_cdf(rng.uniform_open()));
  return set;
}

VoterSet place_voters(const Placement& placement) {
  return std::visit(
      [](const auto& p) -> VoterSet {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, PercentileGrid>) {
          return percentile_grid(p.voters);
        } else {
          Rng rng(p.seed);
          return sample_voters(p.voters, rng);
        }
      },
      placement);
}

Profile rated_profile(const VoterSet& voters, std::span<const double> candidate_positions,
                      double offset) {
  if (candidate_positions.empty()) throw Error("spatial model needs at least one candidate");
  if (!std::isfinite(offset)) throw Error("rating offset must be finite");
  std::vector<RatedBallot> ballots;
  ballots.reserve(voters.positions.size());
  double lo = INFINITY;
  double hi = -INFINITY;
  for (double v : voters.positions) {
    RatedBallot ballot;
    for (double c : candidate_positions) {
      const double r = sincere_rating(v, c, offset);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      ballot.ratings.push_back(r);
    }
    ballots.push_back(std::move(ballot));
  }
  if (ballots.empty()) throw Error("spatial model needs at least one voter");
  // A single distinct rating still needs a non-degenerate scale.
  if (!(lo < hi)) hi = lo + 1.0;
  return Profile::rated(candidate_positions.size(), RatingScale::continuous(lo, hi), std::move(ballots));
}

Profile generate_rated_profile(const SpatialConfig& config) {
  return rated_profile(place_voters(config.placement), config.candidate_positions, config.rating_offset);
}

RankedBallot nearest_candidate_ballot(double voter, std::span<const double> candidate_positions) {
  std::vector<std::size_t> order(candidate_positions.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto distance = [&](std::size_t c) { return std::abs(voter - candidate_positions[c]); };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return distance(x) < distance(y); });

  RankedBallot ballot;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const bool tied_with_next = k + 1 < order.size() && distance(order[k]) == distance(order[k + 1]);
    if (tied_with_next) break;
    ballot.ranking.push_back(candidate(order[k]));
  }
  return ballot;
}

Profile nearest_candidate_profile(const VoterSet& voters, std::span<const double> candidate_positions) {
  if (candidate_positions.size() < 2) throw Error("nearest-candidate voting needs two candidates");
  std::vector<RankedBallot> ballots;
  ballots.reserve(voters.positions.size());
  for (double v : voters.positions) ballots.push_back(nearest_candidate_ballot(v, candidate_positions));
  return Profile::ranked(candidate_positions.size(), std::move(ballots));
}

}  // namespace votelab
