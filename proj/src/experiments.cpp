#include "votelab/experiments.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <thread>

#include "json.hpp"
#include "votelab/rules.hpp"
#include "votelab/spatial.hpp"

namespace votelab {

namespace {
constexpr CandidateId kA = candidate(0);
}

double CellResult::ratio() const {
  if (mjd_only == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(mr_only) / static_cast<double>(mjd_only);
}

void CellResult::record(const TrialWinners& w) {
  if (!w.majority || !w.mjd) {
    ++ties;
  } else if (*w.majority == kA && *w.mjd == kA) {
    ++both_a;
  } else if (*w.majority == kA) {
    ++mr_only;
  } else if (*w.mjd == kA) {
    ++mjd_only;
  } else {
    ++neither_a;
  }
}

CellResult& CellResult::operator+=(const CellResult& other) {
  mr_only += other.mr_only;
  mjd_only += other.mjd_only;
  both_a += other.both_a;
  neither_a += other.neither_a;
  ties += other.ties;
  return *this;
}

TrialWinners run_trial(std::size_t n_voters, double b_pos, Rng& rng) {
  const VoterSet voters = sample_voters(n_voters, rng);
  const std::array<double, 2> positions{0.0, b_pos};
  const Outcome mr = majority_rule(nearest_candidate_profile(voters, positions));
  const Outcome mjd = mjd_winner(rated_profile(voters, positions, kStudyOffset));
  return {mr.winner, mjd.winner};
}

CellResult run_cell(std::size_t n_voters, double b_pos, std::uint64_t trials, std::uint64_t cell_seed,
                    unsigned jobs) {
  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    CellResult part;
    for (std::uint64_t t = begin; t < end; ++t) {
      Rng rng = Rng::split(cell_seed, t);
      part.record(run_trial(n_voters, b_pos, rng));
    }
    return part;
  };

  jobs = std::max(1u, jobs);
  if (jobs == 1 || trials < 2 * jobs) return run_range(0, trials);

  std::vector<CellResult> parts(jobs);
  std::vector<std::thread> workers;
  const std::uint64_t chunk = (trials + jobs - 1) / jobs;
  for (unsigned j = 0; j < jobs; ++j) {
    const std::uint64_t begin = std::min<std::uint64_t>(trials, j * chunk);
    const std::uint64_t end = std::min<std::uint64_t>(trials, begin + chunk);
    workers.emplace_back([&, j, begin, end] { parts[j] = run_range(begin, end); });
  }
  for (auto& w : workers) w.join();

  CellResult total;
  for (const auto& p : parts) total += p;
  return total;
}

StudyResult run_full_study(const StudyConfig& config, unsigned jobs) {
  if (config.voter_counts.empty() || config.b_positions.empty()) throw Error("study needs at least one cell");
  for (auto n : config.voter_counts) {
    if (n == 0) throw Error("voter counts must be positive");
  }
  StudyResult study{config, {}};
  std::uint64_t cell_index = 0;
  for (std::size_t n : config.voter_counts) {
    for (double b : config.b_positions) {
      const std::uint64_t seed = Rng::derive_seed(config.master_seed, cell_index++);
      study.cells.push_back({n, b, config.trials_per_cell, seed,
                             run_cell(n, b, config.trials_per_cell, seed, jobs)});
    }
  }
  return study;
}

std::string study_csv(const StudyResult& study) {
  std::string out = "n_voters,b_pos,trials,mr_only,mjd_only,both_a,neither_a,ties,ratio\n";
  for (const auto& row : study.cells) {
    const auto& r = row.result;
    const double ratio = r.ratio();
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", row.n_voters, row.b_pos, row.trials, r.mr_only,
                       r.mjd_only, r.both_a, r.neither_a, r.ties,
                       std::isinf(ratio) ? std::string("inf") : fmt::format("{:.4f}", ratio));
  }
  return out;
}

std::string study_json(const StudyResult& study) {
  nlohmann::json j;
  j["config"] = {{"voter_counts", study.config.voter_counts},
                 {"b_positions", study.config.b_positions},
                 {"trials_per_cell", study.config.trials_per_cell},
                 {"master_seed", study.config.master_seed},
                 {"rating_offset", kStudyOffset},
                 {"rng", "xoshiro256** seeded by splitmix64; trial i uses split(cell_seed, i)"}};
  j["cells"] = nlohmann::json::array();
  for (const auto& row : study.cells) {
    const auto& r = row.result;
    const double ratio = r.ratio();
    j["cells"].push_back({{"n_voters", row.n_voters},
                          {"b_pos", row.b_pos},
                          {"trials", row.trials},
                          {"cell_seed", row.cell_seed},
                          {"mr_only", r.mr_only},
                          {"mjd_only", r.mjd_only},
                          {"both_a", r.both_a},
                          {"neither_a", r.neither_a},
                          {"ties", r.ties},
                          {"ratio", std::isinf(ratio) ? nlohmann::json(nullptr) : nlohmann::json(ratio)}});
  }
  return j.dump(2) + "\n";
}

}  // namespace votelab
