#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "votelab/ballots.hpp"

namespace votelab {

/// The row of the sorted grade matrix that settled a median tie.
struct TieBreakRow {
  std::size_t row = 0;                   // 1-based, row 1 holds the highest grades
  std::vector<CandidateId> contenders;   // candidates tied on the median
  std::vector<double> grades;            // grade of each contender in `row`
  friend bool operator==(const TieBreakRow&, const TieBreakRow&) = default;
};

/// Per-rule explanation of an outcome.
struct Trace {
  std::string rule;
  std::string score_label;               // "votes", "approvals", "mean", "median", "largest_loss"
  std::vector<double> scores;            // one entry per candidate
  std::vector<double> totals;            // range voting only: weighted rating sums
  std::optional<TieBreakRow> tie_break;  // median rules only, when the tie-break ran
  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Exactly one of `winner` and `tied` is populated.
struct Outcome {
  std::optional<CandidateId> winner;
  std::vector<CandidateId> tied;
  Trace trace;

  bool decisive() const { return winner.has_value(); }
  /// The winner alone, or the tied set.
  std::vector<CandidateId> winners() const;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

enum class LossMetric { kMargin, kWinningVotes };

Outcome majority_rule(const Profile& profile);
Outcome approval_winner(const Profile& profile);
Outcome range_winner(const Profile& profile);

/// Majority judgment on graded or integer ratings, with the sorted-matrix tie-break.
Outcome mj_winner(const Profile& profile);

/// Median rule on raw (possibly continuous) ratings; exact ties use the same tie-break.
Outcome mjd_winner(const Profile& profile);

double largest_loss(const PairwiseTally& tally, CandidateId c, LossMetric metric);
Outcome minimax_winner(const PairwiseTally& tally, LossMetric metric = LossMetric::kMargin);
Outcome minimax_winner(const Profile& profile, LossMetric metric = LossMetric::kMargin);

// Lower median of a multiset of grades: the value at descending position floor(V/2) + 1.
double lower_median(std::vector<double> values);

enum class RuleKind { kMajority, kApproval, kRange, kMj, kMjd, kMinimax };

/// A rule selector usable wherever a rule is a parameter.
struct Rule {
  RuleKind kind = RuleKind::kMinimax;
  LossMetric metric = LossMetric::kMargin;

  Outcome operator()(const Profile& profile) const;
  std::string name() const;
  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Accepts majority, approval, range, mj, mjd, minimax (also "minimax-wv").
Rule parse_rule(std::string_view name, LossMetric metric = LossMetric::kMargin);
LossMetric parse_metric(std::string_view name);
std::string to_string(LossMetric metric);

}  // namespace votelab
