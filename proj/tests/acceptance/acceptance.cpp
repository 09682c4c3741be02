// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "properties.hpp"
#include "votelab/criteria.hpp"
#include "votelab/experiments.hpp"
#include "votelab/rules.hpp"
#include "votelab/scenarios.hpp"
#include "votelab/strategy.hpp"

using namespace votelab;

namespace {

constexpr CandidateId A = candidate(0);
constexpr CandidateId B = candidate(1);
constexpr CandidateId C = candidate(2);
constexpr double kTol = 5e-4;

class Gate {
 public:
  explicit Gate(std::string title) : title_(std::move(title)) {}

  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
    ++checks_;
  }
  void near(double got, double want, double tol, const std::string& what) {
    expect(std::abs(got - want) <= tol, fmt::format("{}: got {:.6f}, want {} ± {}", what, got, want, tol));
  }
  void note(std::string s) { notes_.push_back(std::move(s)); }

  bool report(int number) const {
    const bool ok = failures_.empty() && checks_ > 0;
    fmt::print("{} [{}] {} ({} checks)\n", ok ? "PASS" : "FAIL", number, title_, checks_);
    for (const auto& n : notes_) fmt::print("       {}\n", n);
    for (const auto& f : failures_) fmt::print("       failed: {}\n", f);
    return ok;
  }

 private:
  std::string title_;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
  int checks_ = 0;
};

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Gate graded_landslide() {
  Gate c("graded landslide: median grades 3/4 elect B, majority elects A 98-1, under 1 ms");
  const Profile p = scenarios::overwhelming_favorite_graded();
  const Outcome mj = mj_winner(p);
  const Outcome mr = majority_rule(p);
  c.expect(mj.trace.scores == std::vector<double>{3, 4}, "medians 3 and 4");
  c.expect(mj.winner == B, "median winner B");
  c.expect(mr.winner == A, "majority winner A");
  c.expect(mr.trace.scores == std::vector<double>{98, 1}, "head-to-head 98-1");

  constexpr int reps = 2000;
  const double total = seconds([] {
    for (int i = 0; i < reps; ++i) {
      const Profile q = scenarios::overwhelming_favorite_graded();
      const Outcome a = mj_winner(q);
      const Outcome b = majority_rule(q);
      if (a.winner == b.winner) std::abort();
    }
  });
  const double per_run_ms = 1e3 * total / reps;
  c.note(fmt::format("mean build + both tallies: {:.4f} ms", per_run_ms));
  c.expect(per_run_ms < 1.0, fmt::format("runtime {:.4f} ms", per_run_ms));
  return c;
}

Gate approval_split() {
  Gate c("approval: X 5 vs Y 4 approvals while 8 of 9 prefer Y");
  const Profile opinions = scenarios::nine_voter_opinions();
  const Outcome ap = approval_winner(scenarios::approvals_above(opinions, 5.0));
  c.expect(ap.trace.scores == std::vector<double>{5, 4}, "approvals 5 and 4");
  c.expect(ap.winner == A, "approval winner X");
  const auto t = pairwise_tally(opinions);
  c.expect(t.at(B, A) == 8, fmt::format("voters preferring Y: {}", t.at(B, A)));
  c.expect(opinions.total_weight() == 9, "nine voters");
  return c;
}

Gate range_landslide() {
  Gate c("range landslide: B's total exceeds A's by exactly 1, majority elects A 98-1");
  const Profile p = scenarios::overwhelming_favorite_range();
  const Outcome rv = range_winner(p);
  c.expect(rv.trace.totals[1] - rv.trace.totals[0] == 1.0, "total difference 1");
  c.expect(rv.winner == B, "range winner B");
  const Outcome mr = majority_rule(p);
  c.expect(mr.winner == A, "majority winner A");
  c.expect(mr.trace.scores == std::vector<double>{98, 1}, "head-to-head 98-1");
  return c;
}

Gate centrist_sincere() {
  Gate c("centrist vs offset, sincere: 69 left of B, 59/40 split, means, medians, 19.2% margin");
  const Profile p = scenarios::centrist_vs_offset();
  std::size_t left = 0;
  for (double x : percentile_grid(99).positions) left += x < 0.5 ? 1 : 0;
  c.expect(left == 69, fmt::format("voters left of B: {}", left));
  const auto t = pairwise_tally(p);
  c.expect(t.at(A, B) == 59 && t.at(B, A) == 40, fmt::format("split {}/{}", t.at(A, B), t.at(B, A)));
  const Outcome rv = range_winner(p);
  const Outcome mjd = mjd_winner(p);
  c.near(rv.trace.scores[0], 2.224, kTol, "mean A");
  c.near(rv.trace.scores[1], 2.125, kTol, "mean B");
  c.near(mjd.trace.scores[0], 2.326, kTol, "median A");
  c.near(mjd.trace.scores[1], 2.247, kTol, "median B");
  const double margin = 100.0 * (static_cast<double>(t.at(A, B)) - static_cast<double>(t.at(B, A))) / 99.0;
  c.near(margin, 19.2, 0.05, "majority margin %");
  c.note(fmt::format("means {:.5f}/{:.5f}, medians {:.5f}/{:.5f}, margin {:.3f}%", rv.trace.scores[0],
                     rv.trace.scores[1], mjd.trace.scores[0], mjd.trace.scores[1], margin));
  return c;
}

Gate centrist_attack() {
  Gate c("centrist vs offset, attack: 6 exaggerators flip range and mjd, 5 flip only range");
  const Profile p = scenarios::centrist_vs_offset();
  const Profile six = apply_strategic_voters(p, {B, A, 6});
  const Outcome rv6 = range_winner(six);
  const Outcome mjd6 = mjd_winner(six);
  c.near(rv6.trace.scores[0], 2.166, kTol, "k=6 mean A");
  c.near(rv6.trace.scores[1], 2.208, kTol, "k=6 mean B");
  c.near(mjd6.trace.scores[0], 2.326, kTol, "k=6 median A");
  c.near(mjd6.trace.scores[1], 2.349, kTol, "k=6 median B");
  c.expect(rv6.winner == B, "k=6 range winner B");
  c.expect(mjd6.winner == B, "k=6 mjd winner B");
  const Profile five = apply_strategic_voters(p, {B, A, 5});
  c.expect(range_winner(five).winner == B, "k=5 range winner B");
  c.expect(mjd_winner(five).winner == A, "k=5 mjd winner A");
  return c;
}

Gate centrist_graded() {
  Gate c("centrist vs offset, graded: decisive rows 39 (6,5) and 41 (5,6), endpoints grade 1 and 6");
  const Profile p = scenarios::centrist_vs_offset();
  const auto ext = global_rating_extremes(p);
  c.expect(discretize_rating(ext.lo) == 1, "lowest rating grade 1");
  c.expect(discretize_rating(ext.hi) == 6, "highest rating grade 6");
  const Outcome sincere = mj_winner(discretize_profile(p));
  const Outcome attacked = mj_winner(discretize_profile(apply_strategic_voters(p, {B, A, 6})));
  c.expect(sincere.trace.tie_break && sincere.trace.tie_break->row == 39, "sincere decisive row 39");
  c.expect(sincere.trace.tie_break && sincere.trace.tie_break->grades == std::vector<double>{6, 5},
           "sincere row grades (6, 5)");
  c.expect(sincere.winner == A, "sincere graded winner A");
  c.expect(attacked.trace.tie_break && attacked.trace.tie_break->row == 41, "attacked decisive row 41");
  c.expect(attacked.trace.tie_break && attacked.trace.tie_break->grades == std::vector<double>{5, 6},
           "attacked row grades (5, 6)");
  c.expect(attacked.winner == B, "attacked graded winner B");
  return c;
}

Gate monte_carlo() {
  Gate c("Monte Carlo study, default config, 10000 trials per cell, single thread under 60 s");
  StudyConfig config;
  StudyResult study;
  const double elapsed = seconds([&] { study = run_full_study(config, 1); });
  c.note(fmt::format("master seed {}, {:.2f} s", config.master_seed, elapsed));
  c.expect(study.cells.size() == 15, "15 cells");
  for (const auto& row : study.cells) {
    c.expect(row.result.mr_only > row.result.mjd_only,
             fmt::format("n={} b={}: mr_only {} > mjd_only {}", row.n_voters, row.b_pos, row.result.mr_only,
                         row.result.mjd_only));
    c.expect(row.result.total() == row.trials, "cell counts sum to trials");
    if (row.n_voters == 95 && row.b_pos == 0.5) {
      const auto& r = row.result;
      c.note(fmt::format("(95, 0.5): mr_only {}, mjd_only {}, ratio {:.2f}", r.mr_only, r.mjd_only, r.ratio()));
      c.expect(r.ratio() >= 10.0, "(95, 0.5) ratio >= 10");
      c.expect(r.mr_only >= 1300 && r.mr_only <= 1800, "(95, 0.5) mr_only in [1300, 1800]");
      c.expect(r.mjd_only >= 50 && r.mjd_only <= 150, "(95, 0.5) mjd_only in [50, 150]");
    }
    if (row.n_voters == 15 && row.b_pos == 0.1) {
      const auto& r = row.result;
      const double excess = r.ratio() - 1.0;
      c.note(fmt::format("(15, 0.1): mr_only {}, mjd_only {}, excess {:.1f}%", r.mr_only, r.mjd_only, 100 * excess));
      c.expect(r.mr_only >= 1500 && r.mr_only <= 2400, "(15, 0.1) mr_only in [1500, 2400]");
      c.expect(r.mjd_only >= 1500 && r.mjd_only <= 2400, "(15, 0.1) mjd_only in [1500, 2400]");
      c.expect(r.mr_only > r.mjd_only, "(15, 0.1) mr_only - mjd_only > 0");
      c.expect(excess >= 0.10 && excess <= 0.40, "(15, 0.1) relative excess in [10%, 40%]");
    }
  }
  c.expect(elapsed < 60.0, fmt::format("runtime {:.2f} s", elapsed));
  return c;
}

Gate league() {
  Gate c("league: minimax (margin) crowns A, removing B hands the title to C");
  const Profile games = scenarios::three_team_league();
  const Rule rule{RuleKind::kMinimax, LossMetric::kMargin};
  c.expect(rule(games).winner == A, "minimax champion A");
  const auto report = check_scc(games, rule);
  c.expect(report.violated, "scc violated");
  c.expect(report.witness && report.witness->removed_candidate == B, "removed team B");
  c.expect(report.witness && report.witness->after.winner &&
               original_id(*report.witness->after.winner, B) == C,
           "recount champion C");
  c.expect(replays(report, rule), "witness replays");
  return c;
}

Gate properties() {
  Gate c("property suites");
  const std::vector<std::function<props::Result()>> suites{
      [] { return props::condorcet_consistency(); },
      [] { return props::majority_minimax_agreement(2000, 1); },
      [] { return props::mj_relabeling(2000, 2); },
      [] { return props::range_affine(2000, 3); },
      [] { return props::merge_additivity(2000, 4); },
      [] { return props::attack_preserves_majority(2000, 5); },
      [] { return props::witness_replay(3000, 6); },
      [] { return props::checker_soundness(); },
      [] { return props::no_show_needs_cycle(3000, 7); },
  };
  for (const auto& suite : suites) {
    props::Result r;
    const double t = seconds([&] { r = suite(); });
    c.note(fmt::format("{} {}: {} cases, {} notable, {:.2f} s", r.ok() ? "ok  " : "FAIL", r.name, r.cases,
                       r.witnesses, t));
    c.expect(r.ok(), r.name + (r.first_failure.empty() ? "" : ": " + r.first_failure));
    c.expect(r.cases >= 1000, r.name + ": fewer than 1000 cases");
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::function<Gate()>> criteria{graded_landslide, approval_split, range_landslide,
                                                        centrist_sincere, centrist_attack, centrist_graded,
                                                        monte_carlo,      league,         properties};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!criteria[i]().report(static_cast<int>(i + 1))) ++failed;
  }
  fmt::print("{} of {} acceptance criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
