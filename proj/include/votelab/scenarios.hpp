#pragma once

#include "votelab/ballots.hpp"
#include "votelab/spatial.hpp"

// Hand-built profiles for the worked cases the library is checked against.
namespace votelab::scenarios {

/// 99 voters on a 6-grade scale: 49 give (A=2, B=1), 49 give (6, 5), one gives (3, 4).
Profile overwhelming_favorite_graded();

/// 99 voters on 0..99: 98 rate A one point above B, one rates A=0 and B=99.
Profile overwhelming_favorite_range();

/// Opinions of nine voters about X and Y on a 0..10 scale, average 5: four rate
/// both high with Y higher, four rate both low with X lower, one is just above
/// average on X and just below on Y.
Profile nine_voter_opinions();

/// Ballots approving every candidate rated strictly above `threshold`.
Profile approvals_above(const Profile& opinions, double threshold);

/// Three teams, nine games per pair: A beat B 9-0, B beat C 9-0, C beat A 5-4.
/// Each game is one ballot naming winner then loser, with unlisted teams unranked.
Profile three_team_league();

/// Percentile-grid electorate of 99 voters, A at 0 and B at +0.5, rating = 3 - distance.
SpatialConfig centrist_vs_offset_config();
Profile centrist_vs_offset();

}  // namespace votelab::scenarios
