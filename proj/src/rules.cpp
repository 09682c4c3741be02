#include "votelab/rules.hpp"

#include <algorithm>
#include <functional>

namespace votelab {

namespace {

// Winner if a single candidate attains the best score, else the tied set.
Outcome pick_best(const std::vector<double>& keys, Trace trace,
                  const std::function<bool(double, double)>& better) {
  double best = keys.front();
  for (double k : keys) {
    if (better(k, best)) best = k;
  }
  std::vector<CandidateId> top;
  for (std::size_t c = 0; c < keys.size(); ++c) {
    if (keys[c] == best) top.push_back(candidate(c));
  }
  Outcome out;
  out.trace = std::move(trace);
  if (top.size() == 1) {
    out.winner = top.front();
  } else {
    out.tied = std::move(top);
  }
  return out;
}

Outcome pick_highest(const std::vector<double>& keys, Trace trace) {
  return pick_best(keys, std::move(trace), std::greater<>());
}

void require_rated(const Profile& profile, const char* rule) {
  if (profile.kind() != BallotKind::kRated) {
    throw Error(std::string(rule) + " requires rated ballots");
  }
  if (profile.empty()) throw Error("empty profile");
}

// Each candidate's ratings, repeated by ballot weight and sorted from high to low.
std::vector<std::vector<double>> sorted_columns(const Profile& profile) {
  const std::size_t n = profile.candidate_count();
  std::vector<std::vector<double>> columns(n);
  const auto ballots = profile.rated_ballots();
  for (auto& col : columns) col.reserve(profile.total_weight());
  for (std::size_t b = 0; b < ballots.size(); ++b) {
    for (std::size_t c = 0; c < n; ++c) {
      columns[c].insert(columns[c].end(), profile.weight(b), ballots[b].ratings[c]);
    }
  }
  for (auto& col : columns) std::sort(col.begin(), col.end(), std::greater<>());
  return columns;
}

// Rows are visited by distance from the median row; at equal distance the row
// below (lower grades, larger index) comes first. The first row where the
// remaining contenders disagree drops everyone below that row's best grade.
Outcome break_median_tie(const std::vector<std::vector<double>>& columns,
                         std::vector<CandidateId> contenders, Trace trace) {
  const std::size_t voters = columns.front().size();
  const std::size_t median_row = (voters + 1) / 2;
  const std::vector<CandidateId> initial = contenders;

  auto examine = [&](std::size_t row) {
    double best = columns[index(contenders.front())][row - 1];
    bool untied = false;
    for (CandidateId c : contenders) {
      const double g = columns[index(c)][row - 1];
      if (g != best) untied = true;
      best = std::max(best, g);
    }
    if (!untied) return false;
    std::erase_if(contenders, [&](CandidateId c) { return columns[index(c)][row - 1] < best; });
    return contenders.size() == 1;
  };

  Outcome out;
  for (std::size_t distance = 0; distance < voters; ++distance) {
    std::size_t rows[2] = {median_row + distance, 0};
    if (distance > 0 && median_row > distance) rows[1] = median_row - distance;
    for (std::size_t row : rows) {
      if (row < 1 || row > voters) continue;
      if (examine(row)) {
        TieBreakRow decisive{row, initial, {}};
        for (CandidateId c : initial) decisive.grades.push_back(columns[index(c)][row - 1]);
        trace.tie_break = std::move(decisive);
        out.winner = contenders.front();
        out.trace = std::move(trace);
        return out;
      }
    }
  }
  out.tied = std::move(contenders);
  out.trace = std::move(trace);
  return out;
}

Outcome median_rule(const Profile& profile, const char* rule) {
  const auto columns = sorted_columns(profile);
  const std::size_t voters = columns.front().size();

  Trace trace{rule, "median", {}, {}, std::nullopt};
  for (const auto& col : columns) trace.scores.push_back(col[voters / 2]);

  Outcome first = pick_highest(trace.scores, trace);
  if (first.decisive()) return first;
  return break_median_tie(columns, std::move(first.tied), std::move(trace));
}

}  // namespace

std::vector<CandidateId> Outcome::winners() const {
  if (winner) return {*winner};
  return tied;
}

double lower_median(std::vector<double> values) {
  if (values.empty()) throw Error("median of an empty set");
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end(), std::greater<>());
  return *mid;
}

Outcome majority_rule(const Profile& profile) {
  if (profile.candidate_count() != 2) {
    throw Error("majority rule requires exactly two candidates");
  }
  const auto tally = pairwise_tally(profile);
  const CandidateId a = candidate(0);
  const CandidateId b = candidate(1);
  Trace trace{"majority", "votes",
              {static_cast<double>(tally.at(a, b)), static_cast<double>(tally.at(b, a))}, {}, std::nullopt};
  return pick_highest(trace.scores, trace);
}

Outcome approval_winner(const Profile& profile) {
  require_rated(profile, "approval voting");
  std::vector<double> approvals(profile.candidate_count(), 0.0);
  const auto ballots = profile.rated_ballots();
  for (std::size_t b = 0; b < ballots.size(); ++b) {
    for (std::size_t c = 0; c < approvals.size(); ++c) {
      const double r = ballots[b].ratings[c];
      if (r != 0.0 && r != 1.0) throw Error("not an approval profile");
      approvals[c] += r * profile.weight(b);
    }
  }
  Trace trace{"approval", "approvals", approvals, {}, std::nullopt};
  return pick_highest(approvals, trace);
}

Outcome range_winner(const Profile& profile) {
  require_rated(profile, "range voting");
  std::vector<double> totals(profile.candidate_count(), 0.0);
  const auto ballots = profile.rated_ballots();
  for (std::size_t b = 0; b < ballots.size(); ++b) {
    for (std::size_t c = 0; c < totals.size(); ++c) {
      totals[c] += ballots[b].ratings[c] * profile.weight(b);
    }
  }
  Trace trace{"range", "mean", {}, totals, std::nullopt};
  const auto voters = static_cast<double>(profile.total_weight());
  for (double t : totals) trace.scores.push_back(t / voters);
  return pick_highest(totals, trace);
}

Outcome mj_winner(const Profile& profile) {
  require_rated(profile, "majority judgment");
  if (profile.scale().kind() == ScaleKind::kContinuous) {
    throw Error("majority judgment requires graded or integer ratings");
  }
  return median_rule(profile, "mj");
}

Outcome mjd_winner(const Profile& profile) {
  require_rated(profile, "mjd");
  return median_rule(profile, "mjd");
}

double largest_loss(const PairwiseTally& tally, CandidateId c, LossMetric metric) {
  if (tally.candidate_count() < 2) throw Error("minimax requires at least two candidates");
  std::uint64_t worst = 0;
  for (std::size_t j = 0; j < tally.candidate_count(); ++j) {
    const CandidateId rival = candidate(j);
    if (!tally.beats(rival, c)) continue;
    const std::uint64_t loss = metric == LossMetric::kMargin ? tally.at(rival, c) - tally.at(c, rival)
                                                             : tally.at(rival, c);
    worst = std::max(worst, loss);
  }
  return static_cast<double>(worst);
}

Outcome minimax_winner(const PairwiseTally& tally, LossMetric metric) {
  const std::size_t n = tally.candidate_count();
  if (n < 2) throw Error("minimax requires at least two candidates");
  Trace trace{metric == LossMetric::kMargin ? "minimax" : "minimax-wv", "largest_loss", {}, {},
              std::nullopt};
  for (std::size_t c = 0; c < n; ++c) trace.scores.push_back(largest_loss(tally, candidate(c), metric));

  if (auto cw = condorcet_winner(tally)) {
    Outcome out;
    out.winner = cw;
    out.trace = std::move(trace);
    return out;
  }
  return pick_best(trace.scores, trace, std::less<>());
}

Outcome minimax_winner(const Profile& profile, LossMetric metric) {
  return minimax_winner(pairwise_tally(profile), metric);
}

Outcome Rule::operator()(const Profile& profile) const {
  switch (kind) {
    case RuleKind::kMajority: return majority_rule(profile);
    case RuleKind::kApproval: return approval_winner(profile);
    case RuleKind::kRange: return range_winner(profile);
    case RuleKind::kMj: return mj_winner(profile);
    case RuleKind::kMjd: return mjd_winner(profile);
    case RuleKind::kMinimax: return minimax_winner(profile, metric);
  }
  throw Error("unknown rule");
}

std::string Rule::name() const {
  switch (kind) {
    case RuleKind::kMajority: return "majority";
    case RuleKind::kApproval: return "approval";
    case RuleKind::kRange: return "range";
    case RuleKind::kMj: return "mj";
    case RuleKind::kMjd: return "mjd";
    case RuleKind::kMinimax: return metric == LossMetric::kMargin ? "minimax" : "minimax-wv";
  }
  return "unknown";
}

Rule parse_rule(std::string_view name, LossMetric metric) {
  if (name == "majority" || name == "mr") return {RuleKind::kMajority, metric};
  if (name == "approval") return {RuleKind::kApproval, metric};
  if (name == "range" || name == "rv") return {RuleKind::kRange, metric};
  if (name == "mj") return {RuleKind::kMj, metric};
  if (name == "mjd") return {RuleKind::kMjd, metric};
  if (name == "minimax") return {RuleKind::kMinimax, metric};
  if (name == "minimax-wv") return {RuleKind::kMinimax, LossMetric::kWinningVotes};
  throw Error("unknown rule '" + std::string(name) + "'");
}

LossMetric parse_metric(std::string_view name) {
  if (name == "margin") return LossMetric::kMargin;
  if (name == "winning-votes" || name == "wv") return LossMetric::kWinningVotes;
  throw Error("unknown loss metric '" + std::string(name) + "'");
}

std::string to_string(LossMetric metric) {
  return metric == LossMetric::kMargin ? "margin" : "winning-votes";
}

}  // namespace votelab
