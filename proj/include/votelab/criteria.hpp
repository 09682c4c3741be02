#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "votelab/ballots.hpp"
#include "votelab/rules.hpp"

namespace votelab {

enum class Criterion { kNoShow, kTwin, kTruncation, kMultipleDistricts, kScc };

std::string to_string(Criterion criterion);
Criterion parse_criterion(std::string_view name);

/// Everything needed to replay a violation.
///
/// `inputs` are the profiles the rule first saw (two for multiple districts),
/// `before` the outcomes on them, and `after` the outcome on `altered`: the
/// profile with a voter removed or truncated, the merged districts, or the
/// profile with a candidate removed. For SCC the ids in `after` refer to the
/// reduced candidate set; map them back with original_id().
struct Witness {
  std::vector<Profile> inputs;
  std::vector<Outcome> before;
  Profile altered;
  Outcome after;
  std::optional<std::size_t> ballot;
  std::optional<std::size_t> prefix_length;
  std::optional<CandidateId> removed_candidate;
};

struct CriterionReport {
  Criterion criterion;
  bool violated = false;
  std::optional<Witness> witness;
};

// A voter benefits when the new outcome has a sole winner they strictly prefer
// to every member of the old winning set (which it must not belong to).
bool benefits(const Profile& profile, std::size_t ballot, const Outcome& before, const Outcome& after);

CriterionReport check_no_show(const Profile& profile, const Rule& rule);
CriterionReport check_twin(const Profile& profile, const Rule& rule);
CriterionReport check_truncation(const Profile& profile, const Rule& rule);
CriterionReport check_multiple_districts(const Profile& first, const Profile& second, const Rule& rule);
CriterionReport check_scc(const Profile& profile, const Rule& rule);

CriterionReport check(Criterion criterion, const Profile& profile, const Rule& rule);

/// Re-runs the rule on the stored profiles and compares with the stored outcomes.
bool replays(const CriterionReport& report, const Rule& rule);

enum class BallotSpace { kFullRankings, kTruncatedRankings, kGraded };

/// Profiles to search: every candidate count listed, voter counts in
/// [min_voters, max_voters], ballots drawn from `ballots`. Graded ballots use
/// the integer scale 0..grade_count-1, so grade_count = 2 yields approval ballots.
struct SearchSpace {
  std::vector<std::size_t> candidate_counts{3};
  std::size_t min_voters = 1;
  std::size_t max_voters = 5;
  BallotSpace ballots = BallotSpace::kFullRankings;
  std::size_t grade_count = 3;
};

/// Spaces with at most this many profiles (or district pairs) are enumerated.
inline constexpr double kExhaustiveLimit = 1e7;

/// Number of distinct anonymous profiles (ballot multisets) in the space; squared for districts.
double space_size(const SearchSpace& space, Criterion criterion);

struct SearchResult {
  std::optional<CriterionReport> found;
  std::uint64_t examined = 0;
  bool exhaustive = false;
  bool space_exhausted = false;
};

/// Looks for a profile violating `criterion` under `rule`. Small spaces are
/// enumerated in a fixed order; larger ones are sampled from Rng(seed).
/// At most `budget` profiles (or district pairs) are examined.
SearchResult search_violations(const Rule& rule, Criterion criterion, const SearchSpace& space,
                               std::uint64_t seed, std::uint64_t budget);

}  // namespace votelab
