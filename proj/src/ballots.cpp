#include "votelab/ballots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace votelab {

namespace {

bool is_whole(double x) { return std::isfinite(x) && std::floor(x) == x; }

std::vector<std::uint32_t> normalize_weights(std::vector<std::uint32_t> weights, std::size_t ballots) {
  if (weights.empty()) return std::vector<std::uint32_t>(ballots, 1);
  if (weights.size() != ballots) throw Error("weight count does not match ballot count");
  for (auto w : weights) {
    if (w == 0) throw Error("ballot weights must be positive");
  }
  return weights;
}

// Rank position of each candidate on a ranked ballot; unlisted candidates get `unlisted`.
std::vector<std::size_t> positions(const RankedBallot& ballot, std::size_t candidates,
                                   std::size_t unlisted) {
  std::vector<std::size_t> pos(candidates, unlisted);
  for (std::size_t k = 0; k < ballot.ranking.size(); ++k) pos[index(ballot.ranking[k])] = k;
  return pos;
}

}  // namespace

RatingScale::RatingScale(ScaleKind kind, double min, double max, std::vector<std::string> grades)
    : kind_(kind), min_(min), max_(max), grades_(std::move(grades)) {}

RatingScale RatingScale::continuous(double min, double max) {
  if (!(std::isfinite(min) && std::isfinite(max) && min < max)) {
    throw Error("rating scale requires finite min < max");
  }
  return RatingScale(ScaleKind::kContinuous, min, max, {});
}

RatingScale RatingScale::integer(double min, double max) {
  if (!(is_whole(min) && is_whole(max) && min < max)) {
    throw Error("integer scale requires whole-number min < max");
  }
  return RatingScale(ScaleKind::kInteger, min, max, {});
}

RatingScale RatingScale::graded(std::vector<std::string> labels) {
  if (labels.size() < 2) throw Error("graded scale needs at least two grades");
  const auto top = static_cast<double>(labels.size());
  return RatingScale(ScaleKind::kGraded, 1.0, top, std::move(labels));
}

bool RatingScale::admits(double rating) const {
  if (!std::isfinite(rating) || rating < min_ || rating > max_) return false;
  return kind_ == ScaleKind::kContinuous || is_whole(rating);
}

Profile Profile::rated(std::size_t candidate_count, RatingScale scale,
                       std::vector<RatedBallot> ballots, std::vector<std::uint32_t> weights) {
  if (candidate_count == 0) throw Error("profile needs at least one candidate");
  for (std::size_t b = 0; b < ballots.size(); ++b) {
    const auto& r = ballots[b].ratings;
    if (r.size() != candidate_count) {
      throw Error("ballot " + std::to_string(b + 1) + " rates " + std::to_string(r.size()) +
                  " candidates, expected " + std::to_string(candidate_count));
    }
    for (double x : r) {
      if (!scale.admits(x)) {
        throw Error("ballot " + std::to_string(b + 1) + " has rating " + std::to_string(x) +
                    " outside the scale");
      }
    }
  }
  Profile p;
  p.candidate_count_ = candidate_count;
  p.weights_ = normalize_weights(std::move(weights), ballots.size());
  p.total_weight_ = std::accumulate(p.weights_.begin(), p.weights_.end(), std::uint64_t{0});
  p.scale_ = std::move(scale);
  p.ballots_ = std::move(ballots);
  return p;
}

Profile Profile::ranked(std::size_t candidate_count, std::vector<RankedBallot> ballots,
                        std::vector<std::uint32_t> weights, Unlisted unlisted) {
  if (candidate_count == 0) throw Error("profile needs at least one candidate");
  for (std::size_t b = 0; b < ballots.size(); ++b) {
    std::vector<bool> seen(candidate_count, false);
    for (CandidateId c : ballots[b].ranking) {
      if (index(c) >= candidate_count) {
        throw Error("ballot " + std::to_string(b + 1) + " names an unknown candidate");
      }
      if (seen[index(c)]) {
        throw Error("ballot " + std::to_string(b + 1) + " lists a candidate twice");
      }
      seen[index(c)] = true;
    }
  }
  Profile p;
  p.candidate_count_ = candidate_count;
  p.weights_ = normalize_weights(std::move(weights), ballots.size());
  p.total_weight_ = std::accumulate(p.weights_.begin(), p.weights_.end(), std::uint64_t{0});
  p.ballots_ = std::move(ballots);
  p.unlisted_ = unlisted;
  return p;
}

BallotKind Profile::kind() const {
  return std::holds_alternative<std::vector<RatedBallot>>(ballots_) ? BallotKind::kRated
                                                                   : BallotKind::kRanked;
}

const RatingScale& Profile::scale() const {
  if (!scale_) throw Error("ranked profiles have no rating scale");
  return *scale_;
}

std::span<const RatedBallot> Profile::rated_ballots() const {
  if (kind() != BallotKind::kRated) throw Error("profile holds ranked ballots");
  return std::get<std::vector<RatedBallot>>(ballots_);
}

std::span<const RankedBallot> Profile::ranked_ballots() const {
  if (kind() != BallotKind::kRanked) throw Error("profile holds rated ballots");
  return std::get<std::vector<RankedBallot>>(ballots_);
}

bool Profile::prefers(std::size_t ballot, CandidateId a, CandidateId b) const {
  if (a == b) return false;
  if (kind() == BallotKind::kRated) {
    const auto& r = rated_ballots()[ballot].ratings;
    return r[index(a)] > r[index(b)];
  }
  const auto& ranking = ranked_ballots()[ballot].ranking;
  const auto pa = std::find(ranking.begin(), ranking.end(), a);
  const auto pb = std::find(ranking.begin(), ranking.end(), b);
  if (pa == ranking.end()) return false;
  if (pb == ranking.end()) return unlisted_ == Unlisted::kBottom;
  return pa < pb;
}

PairwiseTally::PairwiseTally(std::size_t candidate_count, std::uint64_t total_voters)
    : size_(candidate_count), total_voters_(total_voters), counts_(candidate_count * candidate_count, 0) {}

PairwiseTally PairwiseTally::from_counts(const std::vector<std::vector<std::uint64_t>>& counts,
                                         std::uint64_t total_voters) {
  PairwiseTally t(counts.size(), total_voters);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i].size() != counts.size()) throw Error("pairwise counts must be square");
    if (counts[i][i] != 0) throw Error("pairwise counts must have a zero diagonal");
    for (std::size_t j = 0; j < counts.size(); ++j) t.counts_[i * t.size_ + j] = counts[i][j];
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (std::size_t j = i + 1; j < counts.size(); ++j) {
      if (counts[i][j] + counts[j][i] > total_voters) {
        throw Error("pairwise counts exceed the number of voters");
      }
    }
  }
  return t;
}

PairwiseTally& PairwiseTally::operator+=(const PairwiseTally& other) {
  if (other.size_ != size_) throw Error("incompatible tallies");
  for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
  total_voters_ += other.total_voters_;
  return *this;
}

PairwiseTally pairwise_tally(const Profile& profile) {
  if (profile.empty()) throw Error("empty profile");
  const std::size_t n = profile.candidate_count();
  PairwiseTally tally(n, profile.total_weight());

  if (profile.kind() == BallotKind::kRated) {
    const auto ballots = profile.rated_ballots();
    for (std::size_t b = 0; b < ballots.size(); ++b) {
      const auto& r = ballots[b].ratings;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (r[i] > r[j]) tally.add(candidate(i), candidate(j), profile.weight(b));
        }
      }
    }
    return tally;
  }

  const auto ballots = profile.ranked_ballots();
  const bool bottom = profile.unlisted() == Unlisted::kBottom;
  for (std::size_t b = 0; b < ballots.size(); ++b) {
    const auto& ranking = ballots[b].ranking;
    const auto pos = positions(ballots[b], n, n);
    for (std::size_t k = 0; k < ranking.size(); ++k) {
      const CandidateId i = ranking[k];
      for (std::size_t j = 0; j < n; ++j) {
        if (pos[j] > k && (pos[j] < n || bottom)) tally.add(i, candidate(j), profile.weight(b));
      }
    }
  }
  return tally;
}

std::optional<CandidateId> condorcet_winner(const PairwiseTally& tally) {
  const std::size_t n = tally.candidate_count();
  for (std::size_t i = 0; i < n; ++i) {
    bool wins_all = true;
    for (std::size_t j = 0; j < n && wins_all; ++j) {
      if (i != j && !tally.beats(candidate(i), candidate(j))) wins_all = false;
    }
    if (wins_all) return candidate(i);
  }
  return std::nullopt;
}

Profile merge_profiles(const Profile& first, const Profile& second) {
  if (first.candidate_count() != second.candidate_count() || first.kind() != second.kind() ||
      first.unlisted() != second.unlisted() ||
      (first.kind() == BallotKind::kRated && !(first.scale() == second.scale()))) {
    throw Error("incompatible profiles");
  }
  std::vector<std::uint32_t> weights(first.weights().begin(), first.weights().end());
  weights.insert(weights.end(), second.weights().begin(), second.weights().end());

  if (first.kind() == BallotKind::kRated) {
    std::vector<RatedBallot> ballots(first.rated_ballots().begin(), first.rated_ballots().end());
    ballots.insert(ballots.end(), second.rated_ballots().begin(), second.rated_ballots().end());
    return Profile::rated(first.candidate_count(), first.scale(), std::move(ballots), std::move(weights));
  }
  std::vector<RankedBallot> ballots(first.ranked_ballots().begin(), first.ranked_ballots().end());
  ballots.insert(ballots.end(), second.ranked_ballots().begin(), second.ranked_ballots().end());
  return Profile::ranked(first.candidate_count(), std::move(ballots), std::move(weights),
                         first.unlisted());
}

namespace {

template <typename Ballot>
std::vector<Ballot> copy_ballots(std::span<const Ballot> ballots) {
  return std::vector<Ballot>(ballots.begin(), ballots.end());
}

Profile rebuild(const Profile& like, std::vector<RatedBallot> ballots, std::vector<std::uint32_t> weights) {
  return Profile::rated(like.candidate_count(), like.scale(), std::move(ballots), std::move(weights));
}

Profile rebuild(const Profile& like, std::vector<RankedBallot> ballots, std::vector<std::uint32_t> weights) {
  return Profile::ranked(like.candidate_count(), std::move(ballots), std::move(weights), like.unlisted());
}

template <typename Ballot>
Profile replace_voter(const Profile& profile, std::size_t ballot, std::span<const Ballot> source,
                      Ballot replacement) {
  if (ballot >= profile.ballot_count()) throw Error("ballot index out of range");
  auto ballots = copy_ballots(source);
  std::vector<std::uint32_t> weights(profile.weights().begin(), profile.weights().end());
  if (weights[ballot] == 1) {
    ballots[ballot] = std::move(replacement);
  } else {
    --weights[ballot];
    ballots.insert(ballots.begin() + static_cast<std::ptrdiff_t>(ballot) + 1, std::move(replacement));
    weights.insert(weights.begin() + static_cast<std::ptrdiff_t>(ballot) + 1, 1);
  }
  return rebuild(profile, std::move(ballots), std::move(weights));
}

}  // namespace

Profile without_voter(const Profile& profile, std::size_t ballot) {
  if (ballot >= profile.ballot_count()) throw Error("ballot index out of range");
  std::vector<std::uint32_t> weights(profile.weights().begin(), profile.weights().end());
  const auto at = static_cast<std::ptrdiff_t>(ballot);
  if (profile.kind() == BallotKind::kRated) {
    auto ballots = copy_ballots(profile.rated_ballots());
    if (--weights[ballot] == 0) {
      ballots.erase(ballots.begin() + at);
      weights.erase(weights.begin() + at);
    }
    return rebuild(profile, std::move(ballots), std::move(weights));
  }
  auto ballots = copy_ballots(profile.ranked_ballots());
  if (--weights[ballot] == 0) {
    ballots.erase(ballots.begin() + at);
    weights.erase(weights.begin() + at);
  }
  return rebuild(profile, std::move(ballots), std::move(weights));
}

Profile with_replaced_voter(const Profile& profile, std::size_t ballot, RankedBallot replacement) {
  return replace_voter(profile, ballot, profile.ranked_ballots(), std::move(replacement));
}

Profile with_replaced_voter(const Profile& profile, std::size_t ballot, RatedBallot replacement) {
  return replace_voter(profile, ballot, profile.rated_ballots(), std::move(replacement));
}

Profile without_candidate(const Profile& profile, CandidateId removed) {
  const std::size_t n = profile.candidate_count();
  if (index(removed) >= n) throw Error("unknown candidate");
  if (n < 2) throw Error("cannot remove the only candidate");
  std::vector<std::uint32_t> weights(profile.weights().begin(), profile.weights().end());

  if (profile.kind() == BallotKind::kRated) {
    std::vector<RatedBallot> ballots;
    ballots.reserve(profile.ballot_count());
    for (const auto& b : profile.rated_ballots()) {
      RatedBallot reduced = b;
      reduced.ratings.erase(reduced.ratings.begin() + static_cast<std::ptrdiff_t>(index(removed)));
      ballots.push_back(std::move(reduced));
    }
    return Profile::rated(n - 1, profile.scale(), std::move(ballots), std::move(weights));
  }

  std::vector<RankedBallot> ballots;
  ballots.reserve(profile.ballot_count());
  for (const auto& b : profile.ranked_ballots()) {
    RankedBallot reduced;
    for (CandidateId c : b.ranking) {
      if (c == removed) continue;
      reduced.ranking.push_back(index(c) > index(removed) ? candidate(index(c) - 1) : c);
    }
    ballots.push_back(std::move(reduced));
  }
  return Profile::ranked(n - 1, std::move(ballots), std::move(weights), profile.unlisted());
}

}  // namespace votelab
