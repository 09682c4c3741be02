#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "votelab/ballots.hpp"
#include "votelab/criteria.hpp"
#include "votelab/rules.hpp"

namespace votelab {

/// A profile together with the display names of its candidates.
struct BallotFile {
  std::vector<std::string> candidates;
  Profile profile;
};

/// "A".."Z", then "C27", "C28", ...
std::vector<std::string> default_names(std::size_t count);

// CSV: a header row of candidate names, then one row per ballot. Rows either
// hold one number per candidate (rated) or candidate names in preference
// order with trailing blanks allowed (ranked). Rated files get an integer
// scale when every rating is whole, otherwise a continuous one, spanning the
// ratings seen. Errors carry the 1-based line number.
BallotFile parse_ballot_csv(std::string_view text);
std::string to_ballot_csv(const BallotFile& file);

// JSON: {"candidates": [...], "kind": "rated"|"ranked", "scale": {...},
//        "unlisted": "bottom"|"unranked", "ballots": [[...]], "weights": [...]}
BallotFile parse_ballot_json(std::string_view text);
nlohmann::json profile_to_json(const Profile& profile, const std::vector<std::string>& names);
BallotFile profile_from_json(const nlohmann::json& j);

/// Dispatches on the .json extension; anything else is read as CSV.
BallotFile load_ballot_file(const std::filesystem::path& path);

nlohmann::json outcome_to_json(const Outcome& outcome, const std::vector<std::string>& names);

/// A criterion report with its witness profiles in the ballot JSON format.
nlohmann::json report_to_json(const CriterionReport& report, const Rule& rule,
                              const std::vector<std::string>& names);

/// The profile a serialized report's witness was found on, inputs[i].
BallotFile witness_input_from_json(const nlohmann::json& report, std::size_t i = 0);

}  // namespace votelab
