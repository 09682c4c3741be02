#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "votelab/ballots.hpp"
#include "votelab/random.hpp"

namespace votelab {

/// Monte Carlo comparison of majority rule and the distance-median rule (MJD)
/// in a one-dimensional model: A sits at the voter median 0, B at b_pos > 0.
struct StudyConfig {
  std::vector<std::size_t> voter_counts{15, 55, 95};
  std::vector<double> b_positions{0.1, 0.2, 0.3, 0.4, 0.5};
  std::uint64_t trials_per_cell = 10000;
  std::uint64_t master_seed = 0;
};

/// Winners of one trial; nullopt marks a tie.
struct TrialWinners {
  std::optional<CandidateId> majority;
  std::optional<CandidateId> mjd;
};

/// Trial counts for one (voters, b_pos) cell. Fields sum to the trial count.
struct CellResult {
  std::uint64_t mr_only = 0;    // MR picked A, MJD picked B
  std::uint64_t mjd_only = 0;   // MJD picked A, MR picked B
  std::uint64_t both_a = 0;
  std::uint64_t neither_a = 0;  // both picked B
  std::uint64_t ties = 0;       // either rule tied

  std::uint64_t total() const { return mr_only + mjd_only + both_a + neither_a + ties; }
  /// mr_only / mjd_only; infinity when mjd_only is zero.
  double ratio() const;
  void record(const TrialWinners& w);
  CellResult& operator+=(const CellResult& other);
  friend bool operator==(const CellResult&, const CellResult&) = default;
};

struct CellRow {
  std::size_t n_voters;
  double b_pos;
  std::uint64_t trials;
  std::uint64_t cell_seed;
  CellResult result;
};

struct StudyResult {
  StudyConfig config;
  std::vector<CellRow> cells;  // voter counts outermost, then B positions
};

inline constexpr double kStudyOffset = 3.0;

TrialWinners run_trial(std::size_t n_voters, double b_pos, Rng& rng);

/// Trial i draws from Rng::split(cell_seed, i), so the counts do not depend on `jobs`.
CellResult run_cell(std::size_t n_voters, double b_pos, std::uint64_t trials, std::uint64_t cell_seed,
                    unsigned jobs = 1);

/// Cell k (row-major over voter counts x B positions) uses seed Rng::derive_seed(master_seed, k).
StudyResult run_full_study(const StudyConfig& config, unsigned jobs = 1);

/// Columns: n_voters,b_pos,trials,mr_only,mjd_only,both_a,neither_a,ties,ratio
std::string study_csv(const StudyResult& study);
/// Config, seed and every cell, enough to replay the run.
std::string study_json(const StudyResult& study);

}  // namespace votelab
