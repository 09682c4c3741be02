#include "commands.hpp"

#include <fmt/format.h>

#include <chrono>
#include <ctime>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "votelab/criteria.hpp"
#include "votelab/experiments.hpp"
#include "votelab/io.hpp"
#include "votelab/rules.hpp"
#include "votelab/scenarios.hpp"
#include "votelab/strategy.hpp"

namespace votelab::cli {

namespace {

struct Options {
  std::string rule = "minimax";
  std::string metric = "margin";
  std::string format = "text";
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool deterministic = false;
  bool require_winner = false;

  // tally / attack / criteria
  std::string input;
  std::string input2;
  std::size_t grades = 6;
  double bin_width = 0.5;

  // reproduce
  std::string target;

  // simulate
  std::vector<std::size_t> voters{15, 55, 95};
  std::vector<double> b_pos{0.1, 0.2, 0.3, 0.4, 0.5};
  std::uint64_t trials = 10000;

  // attack
  std::string favored = "B";
  std::string opponent = "A";
  std::optional<std::size_t> k;

  // criteria
  std::string criterion = "scc";
  std::vector<std::size_t> candidates{3};
  std::size_t min_voters = 1;
  std::size_t max_voters = 5;
  std::string ballots = "full";
  std::uint64_t budget = 100000;
};

std::string join_scores(const Outcome& o, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t c = 0; c < o.trace.scores.size(); ++c) {
    s += fmt::format("{}{}={}", c ? " " : "", names.at(c), o.trace.scores[c]);
  }
  return s;
}

std::string describe(const Outcome& o, const std::vector<std::string>& names) {
  if (o.winner) return names.at(index(*o.winner));
  std::string s = "tie:";
  for (CandidateId c : o.tied) s += " " + names.at(index(c));
  return s;
}

void print_matrix(std::ostream& out, const PairwiseTally& t, const std::vector<std::string>& names) {
  std::size_t width = 4;
  for (const auto& n : names) width = std::max(width, n.size() + 1);
  out << "pairwise (row preferred to column):\n" << fmt::format("{:>{}}", "", width);
  for (const auto& n : names) out << fmt::format("{:>{}}", n, width);
  out << '\n';
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << fmt::format("{:>{}}", names[i], width);
    for (std::size_t j = 0; j < names.size(); ++j) {
      out << (i == j ? fmt::format("{:>{}}", "-", width)
                     : fmt::format("{:>{}}", t.at(candidate(i), candidate(j)), width));
    }
    out << '\n';
  }
}

nlohmann::json tally_json(const PairwiseTally& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < t.candidate_count(); ++i) {
    std::vector<std::uint64_t> row;
    for (std::size_t j = 0; j < t.candidate_count(); ++j) row.push_back(t.at(candidate(i), candidate(j)));
    rows.push_back(row);
  }
  return rows;
}

CandidateId find_candidate(const std::vector<std::string>& names, const std::string& name) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return candidate(i);
  }
  throw Error("unknown candidate '" + name + "'");
}

// MJ on continuous ratings grades them first; every other rule runs as is.
std::function<Outcome(const Profile&)> rule_for(const Options& o, const Profile& sample) {
  const Rule rule = parse_rule(o.rule, parse_metric(o.metric));
  if (rule.kind == RuleKind::kMj && sample.kind() == BallotKind::kRated &&
      sample.scale().kind() == ScaleKind::kContinuous) {
    const double width = o.bin_width;
    const std::size_t grades = o.grades;
    return [width, grades](const Profile& p) { return mj_winner(discretize_profile(p, width, grades)); };
  }
  return rule;
}

int cmd_tally(const Options& o, std::ostream& out) {
  const BallotFile file = load_ballot_file(o.input);
  const Outcome outcome = rule_for(o, file.profile)(file.profile);
  const PairwiseTally tally = pairwise_tally(file.profile);

  if (o.format == "json") {
    nlohmann::json j = outcome_to_json(outcome, file.candidates);
    j["candidates"] = file.candidates;
    j["voters"] = file.profile.total_weight();
    j["pairwise"] = tally_json(tally);
    out << j.dump(2) << '\n';
  } else {
    out << "rule: " << outcome.trace.rule << '\n';
    out << "voters: " << file.profile.total_weight() << '\n';
    out << "winner: " << describe(outcome, file.candidates) << '\n';
    out << outcome.trace.score_label << ": " << join_scores(outcome, file.candidates) << '\n';
    if (!outcome.trace.totals.empty()) {
      std::string totals;
      for (std::size_t c = 0; c < outcome.trace.totals.size(); ++c) {
        totals += fmt::format("{}{}={}", c ? " " : "", file.candidates[c], outcome.trace.totals[c]);
      }
      out << "totals: " << totals << '\n';
    }
    if (const auto& tb = outcome.trace.tie_break) {
      out << "tie-break row: " << tb->row << " grades:";
      for (std::size_t k = 0; k < tb->contenders.size(); ++k) {
        out << ' ' << file.candidates[index(tb->contenders[k])] << '=' << tb->grades[k];
      }
      out << '\n';
    }
    print_matrix(out, tally, file.candidates);
  }
  return (o.require_winner && !outcome.winner) ? kTie : kOk;
}

int cmd_reproduce(const Options& o, std::ostream& out) {
  const auto checks = reproduce(o.target, {o.seed, o.trials, o.jobs});
  bool ok = true;
  if (o.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : checks) {
      j.push_back({{"target", c.target}, {"check", c.label}, {"pass", c.pass}, {"got", c.got}, {"expected", c.expected}});
      ok = ok && c.pass;
    }
    out << j.dump(2) << '\n';
  } else {
    for (const auto& c : checks) {
      out << fmt::format("{} [{}] {}: got {}, expected {}\n", c.pass ? "PASS" : "FAIL", c.target, c.label, c.got,
                         c.expected);
      ok = ok && c.pass;
    }
  }
  return ok ? kOk : kMismatch;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  StudyConfig config{o.voters, o.b_pos, o.trials, o.seed};
  const StudyResult study = run_full_study(config, o.jobs);
  if (o.format == "json") {
    out << study_json(study);
    return kOk;
  }
  if (!o.deterministic) out << "# generated " << timestamp() << '\n';
  out << fmt::format("# seed={} trials={} jobs={}\n", o.seed, o.trials, o.jobs);
  out << study_csv(study);
  return kOk;
}

int cmd_attack(const Options& o, std::ostream& out) {
  BallotFile file = o.input.empty() ? BallotFile{{"A", "B"}, scenarios::centrist_vs_offset()}
                                    : load_ballot_file(o.input);
  const CandidateId favored = find_candidate(file.candidates, o.favored);
  const CandidateId opponent = find_candidate(file.candidates, o.opponent);
  const auto rule = rule_for(o, file.profile);
  const Outcome sincere = rule(file.profile);
  const std::size_t available = sympathizer_count(file.profile, favored, opponent);

  std::optional<std::size_t> flips;
  if (sincere.winner != favored) flips = min_flippers(file.profile, rule, favored, opponent);

  nlohmann::json j;
  j["rule"] = o.rule;
  j["favored"] = o.favored;
  j["opponent"] = o.opponent;
  j["sympathizers"] = available;
  j["sincere"] = outcome_to_json(sincere, file.candidates);
  j["min_flippers"] = flips ? nlohmann::json(*flips) : nlohmann::json(nullptr);
  std::optional<Outcome> attacked;
  if (o.k) {
    attacked = rule(apply_strategic_voters(file.profile, {favored, opponent, *o.k}));
    j["k"] = *o.k;
    j["attacked"] = outcome_to_json(*attacked, file.candidates);
  }

  if (o.format == "json") {
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "sincere winner: " << describe(sincere, file.candidates) << '\n';
  out << "sympathizers of " << o.favored << ": " << available << '\n';
  if (sincere.winner == favored) {
    out << "min_flippers: n/a (" << o.favored << " already wins)\n";
  } else {
    out << "min_flippers: " << (flips ? std::to_string(*flips) : "none") << '\n';
  }
  if (attacked) {
    out << "k=" << *o.k << " winner: " << describe(*attacked, file.candidates) << " ("
        << attacked->trace.score_label << ": " << join_scores(*attacked, file.candidates) << ")\n";
  }
  return kOk;
}

BallotSpace parse_space(const std::string& s) {
  if (s == "full") return BallotSpace::kFullRankings;
  if (s == "truncated") return BallotSpace::kTruncatedRankings;
  if (s == "graded") return BallotSpace::kGraded;
  throw Error("unknown ballot space '" + s + "'");
}

int cmd_criteria(const Options& o, std::ostream& out) {
  const Rule rule = parse_rule(o.rule, parse_metric(o.metric));
  const Criterion criterion = parse_criterion(o.criterion);

  std::optional<CriterionReport> report;
  std::vector<std::string> names;
  std::string summary;
  if (!o.input.empty()) {
    const BallotFile file = load_ballot_file(o.input);
    names = file.candidates;
    if (criterion == Criterion::kMultipleDistricts) {
      if (o.input2.empty()) throw Error("multiple-districts needs --input2");
      report = check_multiple_districts(file.profile, load_ballot_file(o.input2).profile, rule);
    } else {
      report = check(criterion, file.profile, rule);
    }
    summary = "checked " + o.input;
  } else {
    SearchSpace space{o.candidates, o.min_voters, o.max_voters, parse_space(o.ballots), o.grades};
    const SearchResult found = search_violations(rule, criterion, space, o.seed, o.budget);
    report = found.found;
    std::size_t most = 0;
    for (auto c : o.candidates) most = std::max(most, c);
    names = default_names(most);
    summary = fmt::format("searched {} profiles ({}{}) seed={}", found.examined,
                          found.exhaustive ? "exhaustive" : "random",
                          found.space_exhausted ? ", space exhausted" : "", o.seed);
  }

  if (report && report->violated) {
    const auto c = report->witness->inputs.front().candidate_count();
    names.resize(c);
    const auto defaults = default_names(c);
    for (std::size_t i = 0; i < c; ++i) {
      if (names[i].empty()) names[i] = defaults[i];
    }
  }

  nlohmann::json j = report ? report_to_json(*report, rule, names)
                            : nlohmann::json{{"criterion", to_string(criterion)}, {"rule", rule.name()}, {"violated", false}};
  j["summary"] = summary;
  if (o.format == "json") {
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << summary << '\n';
  out << to_string(criterion) << " under " << rule.name() << ": "
      << (report && report->violated ? "violated" : "no violation found") << '\n';
  if (report && report->violated) out << j["witness"].dump(2) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"votelab: voting rules, criterion checks, strategic attacks and spatial simulations"};
  app.require_subcommand(1);

  auto add_rule = [&](CLI::App* sub) {
    sub->add_option("--rule", o.rule, "majority, approval, range, mj, mjd, minimax")->capture_default_str();
    sub->add_option("--metric", o.metric, "minimax loss metric: margin or winning-votes")->capture_default_str();
  };
  auto add_format = [&](CLI::App* sub, const std::string& fallback) {
    o.format = fallback;
    sub->add_option("--format", o.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  };

  auto* tally = app.add_subcommand("tally", "Count a ballot file (CSV or JSON)");
  tally->add_option("input", o.input, "ballot file")->required();
  add_rule(tally);
  tally->add_option("--grades", o.grades, "grades when mj runs on continuous ratings");
  tally->add_option("--bin-width", o.bin_width, "bin width when mj runs on continuous ratings");
  tally->add_flag("--require-winner", o.require_winner, "exit 2 on a tie");

  auto* repro = app.add_subcommand("reproduce", "Rebuild a worked case and verify its figures");
  repro->add_option("target", o.target, "example1, example2, approval, example3, league, study, all")->required();
  repro->add_option("--seed", o.seed);
  repro->add_option("--trials", o.trials, "trials per study cell");
  repro->add_option("--jobs", o.jobs);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo comparison of majority rule and MJD");
  sim->add_option("--voters", o.voters, "voter counts")->capture_default_str();
  sim->add_option("--b-pos", o.b_pos, "positions of candidate B")->capture_default_str();
  sim->add_option("--trials", o.trials, "trials per cell")->capture_default_str();
  sim->add_option("--seed", o.seed)->capture_default_str();
  sim->add_option("--jobs", o.jobs)->capture_default_str();
  sim->add_flag("--deterministic", o.deterministic, "omit the timestamp line");

  auto* attack = app.add_subcommand("attack", "Find the fewest exaggerating voters that flip a result");
  attack->add_option("--input", o.input, "rated ballot file (default: 99-voter percentile grid, A=0, B=0.5)");
  add_rule(attack);
  attack->add_option("--favored", o.favored)->capture_default_str();
  attack->add_option("--opponent", o.opponent)->capture_default_str();
  attack->add_option("--k", o.k, "also report the outcome with k attackers");
  attack->add_option("--grades", o.grades)->capture_default_str();
  attack->add_option("--bin-width", o.bin_width)->capture_default_str();

  auto* crit = app.add_subcommand("criteria", "Check or search for criterion violations");
  add_rule(crit);
  crit->add_option("--criterion", o.criterion, "no-show, twin, truncation, multiple-districts, scc")->capture_default_str();
  crit->add_option("--input", o.input, "check this profile instead of searching");
  crit->add_option("--input2", o.input2, "second district for multiple-districts");
  crit->add_option("--candidates", o.candidates)->capture_default_str();
  crit->add_option("--min-voters", o.min_voters)->capture_default_str();
  crit->add_option("--voters", o.max_voters, "largest electorate searched")->capture_default_str();
  crit->add_option("--ballots", o.ballots, "full, truncated or graded")->capture_default_str();
  crit->add_option("--grades", o.grades, "grade count for graded ballots");
  crit->add_option("--budget", o.budget)->capture_default_str();
  crit->add_option("--seed", o.seed)->capture_default_str();

  add_format(tally, "text");
  add_format(repro, "text");
  add_format(attack, "text");
  add_format(crit, "text");
  sim->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"text", "csv", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  if (sim->parsed() && o.format == "text") o.format = "csv";
  if (crit->parsed() && o.ballots == "graded" && crit->count("--grades") == 0) o.grades = 3;

  try {
    if (tally->parsed()) return cmd_tally(o, out);
    if (repro->parsed()) return cmd_reproduce(o, out);
    if (sim->parsed()) return cmd_simulate(o, out);
    if (attack->parsed()) return cmd_attack(o, out);
    if (crit->parsed()) return cmd_criteria(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace votelab::cli
