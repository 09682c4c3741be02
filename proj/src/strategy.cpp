#include "votelab/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace votelab {

namespace {

void check_pair(const Profile& profile, CandidateId favored, CandidateId opponent) {
  if (profile.kind() != BallotKind::kRated) throw Error("strategic voting needs rated ballots");
  if (index(favored) >= profile.candidate_count() || index(opponent) >= profile.candidate_count()) {
    throw Error("unknown candidate");
  }
  if (favored == opponent) throw Error("favored and opponent must differ");
}

}  // namespace

RatingExtremes global_rating_extremes(const Profile& profile) {
  if (profile.kind() != BallotKind::kRated) throw Error("rating extremes need rated ballots");
  if (profile.empty()) throw Error("empty profile");
  RatingExtremes ext{INFINITY, -INFINITY};
  for (const auto& b : profile.rated_ballots()) {
    const auto [lo, hi] = std::minmax_element(b.ratings.begin(), b.ratings.end());
    ext.lo = std::min(ext.lo, *lo);
    ext.hi = std::max(ext.hi, *hi);
  }
  return ext;
}

std::size_t sympathizer_count(const Profile& profile, CandidateId favored, CandidateId opponent) {
  check_pair(profile, favored, opponent);
  std::size_t count = 0;
  for (std::size_t b = 0; b < profile.ballot_count(); ++b) {
    if (profile.prefers(b, favored, opponent)) count += profile.weight(b);
  }
  return count;
}

std::vector<std::size_t> strategic_voter_order(const Profile& profile, CandidateId favored,
                                               CandidateId opponent) {
  check_pair(profile, favored, opponent);
  std::vector<std::size_t> order;
  for (std::size_t b = 0; b < profile.ballot_count(); ++b) {
    if (profile.prefers(b, favored, opponent)) order.push_back(b);
  }
  const auto ballots = profile.rated_ballots();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return ballots[x].ratings[index(opponent)] < ballots[y].ratings[index(opponent)];
  });
  return order;
}

Profile apply_strategic_voters(const Profile& profile, const AttackSpec& spec) {
  const auto order = strategic_voter_order(profile, spec.favored, spec.opponent);
  const std::size_t available = sympathizer_count(profile, spec.favored, spec.opponent);
  if (spec.k > available) {
    throw Error("attack needs " + std::to_string(spec.k) + " sympathizers but only " +
                std::to_string(available) + " prefer the favored candidate");
  }
  if (spec.k == 0) return profile;

  const auto ext = global_rating_extremes(profile);
  const auto ballots = profile.rated_ballots();
  std::vector<std::uint32_t> strategic(profile.ballot_count(), 0);
  std::size_t remaining = spec.k;
  for (std::size_t b : order) {
    if (remaining == 0) break;
    const auto take = static_cast<std::uint32_t>(std::min<std::size_t>(remaining, profile.weight(b)));
    strategic[b] = take;
    remaining -= take;
  }

  std::vector<RatedBallot> out;
  std::vector<std::uint32_t> weights;
  for (std::size_t b = 0; b < ballots.size(); ++b) {
    const std::uint32_t sincere = profile.weight(b) - strategic[b];
    if (sincere > 0) {
      out.push_back(ballots[b]);
      weights.push_back(sincere);
    }
    if (strategic[b] > 0) {
      RatedBallot insincere = ballots[b];
      insincere.ratings[index(spec.favored)] = ext.hi;
      insincere.ratings[index(spec.opponent)] = ext.lo;
      out.push_back(std::move(insincere));
      weights.push_back(strategic[b]);
    }
  }
  return Profile::rated(profile.candidate_count(), profile.scale(), std::move(out), std::move(weights));
}

std::optional<std::size_t> min_flippers(const Profile& profile, const Rule& rule, CandidateId favored,
                                        CandidateId opponent) {
  return min_flippers(profile, std::function<Outcome(const Profile&)>(rule), favored, opponent);
}

std::optional<std::size_t> min_flippers(const Profile& profile,
                                        const std::function<Outcome(const Profile&)>& rule,
                                        CandidateId favored, CandidateId opponent) {
  if (rule(profile).winner == favored) throw Error("favored candidate already wins");
  const std::size_t available = sympathizer_count(profile, favored, opponent);
  for (std::size_t k = 1; k <= available; ++k) {
    if (rule(apply_strategic_voters(profile, {favored, opponent, k})).winner == favored) return k;
  }
  return std::nullopt;
}

int discretize_rating(double rating, double bin_width, std::size_t grade_count) {
  if (!(bin_width > 0.0) || grade_count < 2) throw Error("invalid discretization parameters");
  const double top = bin_width * static_cast<double>(grade_count);
  if (!(rating >= 0.0 && rating <= top)) throw Error("rating out of range");
  const double bin = std::floor(rating / bin_width) + 1.0;
  return static_cast<int>(std::min(bin, static_cast<double>(grade_count)));
}

Profile discretize_profile(const Profile& profile, double bin_width, std::size_t grade_count) {
  if (profile.kind() != BallotKind::kRated) throw Error("discretization needs rated ballots");
  std::vector<RatedBallot> ballots;
  ballots.reserve(profile.ballot_count());
  for (const auto& b : profile.rated_ballots()) {
    RatedBallot graded;
    for (double r : b.ratings) graded.ratings.push_back(discretize_rating(r, bin_width, grade_count));
    ballots.push_back(std::move(graded));
  }
  std::vector<std::string> labels;
  for (std::size_t g = 1; g <= grade_count; ++g) labels.push_back(std::to_string(g));
  return Profile::rated(profile.candidate_count(), RatingScale::graded(std::move(labels)), std::move(ballots),
                        std::vector<std::uint32_t>(profile.weights().begin(), profile.weights().end()));
}

}  // namespace votelab
