#include <fmt/format.h>

#include <cmath>

#include "commands.hpp"
#include "votelab/criteria.hpp"
#include "votelab/experiments.hpp"
#include "votelab/rules.hpp"
#include "votelab/scenarios.hpp"
#include "votelab/strategy.hpp"

namespace votelab::cli {

namespace {

// Published figures are given to three decimals.
constexpr double kDecimalTolerance = 5e-4;

constexpr CandidateId kA = candidate(0);
constexpr CandidateId kB = candidate(1);
constexpr CandidateId kC = candidate(2);

class Checks {
 public:
  explicit Checks(std::string target) : target_(std::move(target)) {}

  void near(const std::string& label, double got, double expected, double tol = kDecimalTolerance) {
    checks_.push_back({target_, label, std::abs(got - expected) <= tol, fmt::format("{:.4f}", got),
                       fmt::format("{} ±{}", expected, tol)});
  }

  template <typename T>
  void equal(const std::string& label, const T& got, const T& expected) {
    checks_.push_back({target_, label, got == expected, fmt::format("{}", got), fmt::format("{}", expected)});
  }

  void winner(const std::string& label, const Outcome& outcome, CandidateId expected) {
    const std::string got = outcome.winner ? name(*outcome.winner) : "tie";
    checks_.push_back({target_, label, outcome.winner == expected, got, name(expected)});
  }

  void within(const std::string& label, double got, double lo, double hi) {
    checks_.push_back({target_, label, got >= lo && got <= hi, fmt::format("{}", got),
                       fmt::format("[{}, {}]", lo, hi)});
  }

  void truth(const std::string& label, bool ok, const std::string& got) {
    checks_.push_back({target_, label, ok, got, "true"});
  }

  std::vector<Check> take() { return std::move(checks_); }

 private:
  static std::string name(CandidateId c) { return std::string(1, static_cast<char>('A' + index(c))); }

  std::string target_;
  std::vector<Check> checks_;
};

std::vector<Check> overwhelming_graded() {
  Checks c("example1");
  const Profile p = scenarios::overwhelming_favorite_graded();
  const Outcome mj = mj_winner(p);
  c.equal("median A", mj.trace.scores[0], 3.0);
  c.equal("median B", mj.trace.scores[1], 4.0);
  c.winner("majority judgment winner", mj, kB);
  const Outcome mr = majority_rule(p);
  c.winner("majority winner", mr, kA);
  c.equal("voters preferring A", mr.trace.scores[0], 98.0);
  c.equal("voters preferring B", mr.trace.scores[1], 1.0);
  return c.take();
}

std::vector<Check> overwhelming_range() {
  Checks c("example2");
  const Profile p = scenarios::overwhelming_favorite_range();
  const Outcome rv = range_winner(p);
  c.equal("rating total B - A", rv.trace.totals[1] - rv.trace.totals[0], 1.0);
  c.winner("range winner", rv, kB);
  const Outcome mr = majority_rule(p);
  c.winner("majority winner", mr, kA);
  c.equal("voters preferring A", mr.trace.scores[0], 98.0);
  c.equal("voters preferring B", mr.trace.scores[1], 1.0);
  return c.take();
}

std::vector<Check> nine_voter_approval() {
  Checks c("approval");
  const Profile opinions = scenarios::nine_voter_opinions();
  const Outcome ap = approval_winner(scenarios::approvals_above(opinions, 5.0));
  c.equal("approvals X", ap.trace.scores[0], 5.0);
  c.equal("approvals Y", ap.trace.scores[1], 4.0);
  c.winner("approval winner (X)", ap, kA);
  const auto tally = pairwise_tally(opinions);
  c.equal<std::uint64_t>("voters preferring Y to X", tally.at(kB, kA), 8);
  return c.take();
}

std::vector<Check> spatial_two_candidates() {
  Checks c("example3");
  const Profile sincere = scenarios::centrist_vs_offset();
  const VoterSet voters = percentile_grid(99);
  std::size_t below_b = 0;
  for (double x : voters.positions) below_b += x < 0.5 ? 1 : 0;
  c.equal<std::size_t>("voters left of B", below_b, 69);

  const auto tally = pairwise_tally(sincere);
  c.equal<std::uint64_t>("voters preferring A", tally.at(kA, kB), 59);
  c.equal<std::uint64_t>("voters preferring B", tally.at(kB, kA), 40);
  const double margin = 100.0 * (static_cast<double>(tally.at(kA, kB)) - static_cast<double>(tally.at(kB, kA))) / 99.0;
  c.near("majority margin (%)", margin, 19.2, 0.05);

  const Outcome rv = range_winner(sincere);
  const Outcome mjd = mjd_winner(sincere);
  c.near("sincere mean A", rv.trace.scores[0], 2.224);
  c.near("sincere mean B", rv.trace.scores[1], 2.125);
  c.near("sincere median A", mjd.trace.scores[0], 2.326);
  c.near("sincere median B", mjd.trace.scores[1], 2.247);
  c.winner("sincere range winner", rv, kA);
  c.winner("sincere mjd winner", mjd, kA);

  const auto ext = global_rating_extremes(sincere);
  c.near("lowest sincere rating", ext.lo, 0.174);
  c.near("highest sincere rating", ext.hi, 3.000);

  const Profile six = apply_strategic_voters(sincere, {kB, kA, 6});
  const Outcome rv6 = range_winner(six);
  const Outcome mjd6 = mjd_winner(six);
  c.near("k=6 mean A", rv6.trace.scores[0], 2.166);
  c.near("k=6 mean B", rv6.trace.scores[1], 2.208);
  c.near("k=6 median A", mjd6.trace.scores[0], 2.326);
  c.near("k=6 median B", mjd6.trace.scores[1], 2.349);
  c.winner("k=6 range winner", rv6, kB);
  c.winner("k=6 mjd winner", mjd6, kB);

  const Profile five = apply_strategic_voters(sincere, {kB, kA, 5});
  c.winner("k=5 range winner", range_winner(five), kB);
  c.winner("k=5 mjd winner", mjd_winner(five), kA);
  const auto flips = min_flippers(sincere, Rule{RuleKind::kMjd}, kB, kA);
  c.equal<std::size_t>("fewest strategic voters flipping mjd", flips.value_or(0), 6);

  c.equal("grade of lowest rating", discretize_rating(ext.lo), 1);
  c.equal("grade of highest rating", discretize_rating(ext.hi), 6);
  const Outcome mj = mj_winner(discretize_profile(sincere));
  c.equal("graded medians tied", mj.trace.scores[0] == mj.trace.scores[1], true);
  c.equal<std::size_t>("sincere decisive row", mj.trace.tie_break ? mj.trace.tie_break->row : 0, 39);
  if (mj.trace.tie_break) {
    c.equal("sincere row grade A", mj.trace.tie_break->grades[0], 6.0);
    c.equal("sincere row grade B", mj.trace.tie_break->grades[1], 5.0);
  }
  c.winner("sincere graded winner", mj, kA);
  const Outcome mj6 = mj_winner(discretize_profile(six));
  c.equal<std::size_t>("k=6 decisive row", mj6.trace.tie_break ? mj6.trace.tie_break->row : 0, 41);
  if (mj6.trace.tie_break) {
    c.equal("k=6 row grade A", mj6.trace.tie_break->grades[0], 5.0);
    c.equal("k=6 row grade B", mj6.trace.tie_break->grades[1], 6.0);
  }
  c.winner("k=6 graded winner", mj6, kB);
  return c.take();
}

std::vector<Check> league() {
  Checks c("league");
  const Profile games = scenarios::three_team_league();
  const auto tally = pairwise_tally(games);
  c.equal<std::uint64_t>("A over B", tally.at(kA, kB), 9);
  c.equal<std::uint64_t>("B over C", tally.at(kB, kC), 9);
  c.equal<std::uint64_t>("C over A", tally.at(kC, kA), 5);
  c.equal<std::uint64_t>("A over C", tally.at(kA, kC), 4);
  const Outcome mm = minimax_winner(tally, LossMetric::kMargin);
  c.winner("minimax champion", mm, kA);
  c.equal("largest loss A", mm.trace.scores[0], 1.0);
  c.equal("largest loss B", mm.trace.scores[1], 9.0);
  c.equal("largest loss C", mm.trace.scores[2], 9.0);
  const auto report = check_scc(games, Rule{RuleKind::kMinimax, LossMetric::kMargin});
  c.equal("removing a loser changes the champion", report.violated, true);
  if (report.witness) {
    const auto& w = *report.witness;
    c.truth("removed team is B", w.removed_candidate == kB, "");
    Outcome recount = w.after;
    if (recount.winner) recount.winner = original_id(*recount.winner, *w.removed_candidate);
    c.winner("champion after removing B", recount, kC);
  }
  return c.take();
}

std::vector<Check> study(const ReproduceOptions& options) {
  Checks c("study");
  StudyConfig config;
  config.trials_per_cell = options.trials;
  config.master_seed = options.seed;
  const StudyResult result = run_full_study(config, options.jobs);
  bool all_cells = true;
  for (const auto& row : result.cells) {
    all_cells = all_cells && row.result.mr_only > row.result.mjd_only;
    c.truth(fmt::format("n={} b={}: mr_only > mjd_only", row.n_voters, row.b_pos),
            row.result.mr_only > row.result.mjd_only,
            fmt::format("{} vs {}", row.result.mr_only, row.result.mjd_only));
  }
  c.truth("majority rule ahead in every cell", all_cells, all_cells ? "true" : "false");
  if (options.trials != 10000) return c.take();

  auto cell = [&](std::size_t n, double b) -> const CellResult& {
    for (const auto& row : result.cells) {
      if (row.n_voters == n && row.b_pos == b) return row.result;
    }
    throw Error("missing study cell");
  };
  const auto& far = cell(95, 0.5);
  c.within("n=95 b=0.5 mr_only", static_cast<double>(far.mr_only), 1300, 1800);
  c.within("n=95 b=0.5 mjd_only", static_cast<double>(far.mjd_only), 50, 150);
  c.truth("n=95 b=0.5 ratio >= 10", far.ratio() >= 10.0, fmt::format("{:.2f}", far.ratio()));
  const auto& near_cell = cell(15, 0.1);
  c.within("n=15 b=0.1 mr_only", static_cast<double>(near_cell.mr_only), 1500, 2400);
  c.within("n=15 b=0.1 mjd_only", static_cast<double>(near_cell.mjd_only), 1500, 2400);
  c.within("n=15 b=0.1 relative excess", near_cell.ratio() - 1.0, 0.10, 0.40);
  return c.take();
}

}  // namespace

std::vector<Check> reproduce(const std::string& target, const ReproduceOptions& options) {
  if (target == "example1") return overwhelming_graded();
  if (target == "example2") return overwhelming_range();
  if (target == "approval") return nine_voter_approval();
  if (target == "example3") return spatial_two_candidates();
  if (target == "league") return league();
  if (target == "study") return study(options);
  if (target == "all") {
    std::vector<Check> all;
    for (const char* t : {"example1", "example2", "approval", "example3", "league", "study"}) {
      auto part = reproduce(t, options);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw Error("unknown reproduction target '" + target + "'");
}

}  // namespace votelab::cli
