#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace votelab {

/// Raised for malformed inputs and violated preconditions throughout the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Position of a candidate within one election, dense in 0..C-1.
enum class CandidateId : std::uint32_t {};

constexpr std::size_t index(CandidateId c) { return static_cast<std::size_t>(c); }
constexpr CandidateId candidate(std::size_t i) { return static_cast<CandidateId>(i); }

enum class ScaleKind { kContinuous, kInteger, kGraded };

/// Range of admissible ratings. Graded scales carry labels and use codes 1..G.
class RatingScale {
 public:
  static RatingScale continuous(double min, double max);
  static RatingScale integer(double min, double max);
  static RatingScale graded(std::vector<std::string> labels);

  ScaleKind kind() const { return kind_; }
  double min() const { return min_; }
  double max() const { return max_; }
  const std::vector<std::string>& grades() const { return grades_; }

  bool admits(double rating) const;

  friend bool operator==(const RatingScale&, const RatingScale&) = default;

 private:
  RatingScale(ScaleKind kind, double min, double max, std::vector<std::string> grades);

  ScaleKind kind_;
  double min_;
  double max_;
  std::vector<std::string> grades_;
};

struct RatedBallot {
  std::vector<double> ratings;
  friend bool operator==(const RatedBallot&, const RatedBallot&) = default;
};

struct RankedBallot {
  std::vector<CandidateId> ranking;
  friend bool operator==(const RankedBallot&, const RankedBallot&) = default;
};

enum class BallotKind { kRated, kRanked };

// How a ranked ballot treats candidates it does not list.
//   kBottom:   unlisted candidates sit tied below every listed one (truncation).
//   kUnranked: unlisted candidates are compared with nobody. A ballot listing
//              only {X, Y} then records a single head-to-head result.
enum class Unlisted { kBottom, kUnranked };

/// An immutable collection of homogeneous ballots over a fixed candidate set.
class Profile {
 public:
  static Profile rated(std::size_t candidate_count, RatingScale scale,
                       std::vector<RatedBallot> ballots,
                       std::vector<std::uint32_t> weights = {});
  static Profile ranked(std::size_t candidate_count, std::vector<RankedBallot> ballots,
                        std::vector<std::uint32_t> weights = {},
                        Unlisted unlisted = Unlisted::kBottom);

  BallotKind kind() const;
  std::size_t candidate_count() const { return candidate_count_; }
  std::size_t ballot_count() const { return weights_.size(); }
  std::uint64_t total_weight() const { return total_weight_; }
  std::uint32_t weight(std::size_t ballot) const { return weights_.at(ballot); }
  std::span<const std::uint32_t> weights() const { return weights_; }
  bool empty() const { return weights_.empty(); }

  /// Throws for ranked profiles.
  const RatingScale& scale() const;
  std::span<const RatedBallot> rated_ballots() const;
  std::span<const RankedBallot> ranked_ballots() const;
  Unlisted unlisted() const { return unlisted_; }

  /// True when the voter(s) behind `ballot` strictly prefer `a` to `b`.
  bool prefers(std::size_t ballot, CandidateId a, CandidateId b) const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  Profile() = default;

  std::size_t candidate_count_ = 0;
  std::optional<RatingScale> scale_;
  std::variant<std::vector<RatedBallot>, std::vector<RankedBallot>> ballots_;
  std::vector<std::uint32_t> weights_;
  std::uint64_t total_weight_ = 0;
  Unlisted unlisted_ = Unlisted::kBottom;
};

/// Head-to-head vote counts: at(i, j) voters strictly prefer i to j.
class PairwiseTally {
 public:
  PairwiseTally(std::size_t candidate_count, std::uint64_t total_voters);
  /// Builds a tally from explicit counts; rows are candidates, `counts[i][j]` as in at().
  static PairwiseTally from_counts(const std::vector<std::vector<std::uint64_t>>& counts,
                                   std::uint64_t total_voters);

  std::size_t candidate_count() const { return size_; }
  std::uint64_t total_voters() const { return total_voters_; }
  std::uint64_t at(CandidateId i, CandidateId j) const { return counts_[index(i) * size_ + index(j)]; }
  void add(CandidateId i, CandidateId j, std::uint64_t votes) {
    counts_[index(i) * size_ + index(j)] += votes;
  }

  bool beats(CandidateId i, CandidateId j) const { return at(i, j) > at(j, i); }

  PairwiseTally& operator+=(const PairwiseTally& other);
  friend bool operator==(const PairwiseTally&, const PairwiseTally&) = default;

 private:
  std::size_t size_;
  std::uint64_t total_voters_;
  std::vector<std::uint64_t> counts_;
};

PairwiseTally pairwise_tally(const Profile& profile);

/// The candidate winning every head-to-head race by a strict majority, if any.
std::optional<CandidateId> condorcet_winner(const PairwiseTally& tally);

/// Concatenates the ballots of two districts over the same candidates.
Profile merge_profiles(const Profile& first, const Profile& second);

// Profile edits used by the criterion checkers. Each returns a new profile.

/// Removes one voter's worth of weight from `ballot` (drops the ballot at weight 1).
Profile without_voter(const Profile& profile, std::size_t ballot);

/// One voter of `ballot` casts `replacement` instead; the rest keep the original.
Profile with_replaced_voter(const Profile& profile, std::size_t ballot, RankedBallot replacement);
Profile with_replaced_voter(const Profile& profile, std::size_t ballot, RatedBallot replacement);

/// Deletes a candidate from every ballot. Higher ids shift down by one.
Profile without_candidate(const Profile& profile, CandidateId removed);

/// Maps an id of the reduced profile back to the original candidate numbering.
constexpr CandidateId original_id(CandidateId reduced, CandidateId removed) {
  return index(reduced) >= index(removed) ? candidate(index(reduced) + 1) : reduced;
}

}  // namespace votelab
