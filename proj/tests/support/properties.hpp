#pragma once

// Property suites shared by the unit tests and the acceptance binary.

#include <cstdint>
#include <string>

namespace props {

struct Result {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::uint64_t witnesses = 0;  // interesting cases seen, where the suite tracks them
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

/// Minimax elects the Condorcet winner whenever one exists, both loss metrics.
/// Exhaustive: full rankings for 2..4 candidates and 1..5 voters, truncated
/// rankings for 3 candidates, graded ballots (3 grades) for 2..3 candidates.
/// Also checks the library tally against the oracle tally and CW uniqueness.
Result condorcet_consistency();

/// On two candidates without rating ties, minimax and majority rule agree.
Result majority_minimax_agreement(std::uint64_t cases, std::uint64_t seed);

/// mj winners survive any strictly increasing relabeling of the grades.
Result mj_relabeling(std::uint64_t cases, std::uint64_t seed);

/// Range voting winners survive r -> a r + b for a > 0.
Result range_affine(std::uint64_t cases, std::uint64_t seed);

/// tally(merge(p, q)) = tally(p) + tally(q).
Result merge_additivity(std::uint64_t cases, std::uint64_t seed);

/// Exaggeration by supporters leaves the favored/opponent head-to-head and the majority outcome unchanged.
Result attack_preserves_majority(std::uint64_t cases, std::uint64_t seed);

/// Random profiles for every criterion and several rules: every reported
/// violation replays, and the brute-force checker agrees on whether one exists.
Result witness_replay(std::uint64_t cases, std::uint64_t seed);

/// Exhaustive over 3 candidates and up to 4 voters (full and truncated
/// rankings, 2-grade and 3-grade ballots): checker verdicts match the brute-force checker.
Result checker_soundness();

/// Minimax no-show, twin and truncation witnesses occur only where no
/// Condorcet winner exists. Exhaustive over 3 candidates (1..5 voters, full
/// and truncated rankings) and 4 candidates (full rankings up to 4 voters,
/// truncated up to 3), then `random_cases` random truncated 4-candidate profiles.
Result no_show_needs_cycle(std::uint64_t random_cases, std::uint64_t random_seed);

}  // namespace props
