#include "doctest.h"

#include <random>

#include "properties.hpp"
#include "votelab/rules.hpp"
#include "votelab/scenarios.hpp"
#include "votelab/strategy.hpp"

using namespace votelab;

namespace {

constexpr CandidateId A = candidate(0);
constexpr CandidateId B = candidate(1);

const Profile& sincere() {
  static const Profile p = scenarios::centrist_vs_offset();
  return p;
}

}  // namespace

TEST_CASE("rating extremes of the centrist profile") {
  const auto ext = global_rating_extremes(sincere());
  CHECK(ext.lo == doctest::Approx(0.174).epsilon(5e-4 / 0.174));
  CHECK(ext.hi == 3.0);
  CHECK(sympathizer_count(sincere(), B, A) == 40);
  CHECK(sympathizer_count(sincere(), A, B) == 59);
}

TEST_CASE("zero attackers change nothing") {
  CHECK(apply_strategic_voters(sincere(), {B, A, 0}) == sincere());
}

TEST_CASE("attack outcomes by size") {
  const Profile five = apply_strategic_voters(sincere(), {B, A, 5});
  const Profile six = apply_strategic_voters(sincere(), {B, A, 6});
  CHECK(range_winner(five).winner == B);
  CHECK(mjd_winner(five).winner == A);
  CHECK(range_winner(six).winner == B);
  CHECK(mjd_winner(six).winner == B);
  CHECK(range_winner(apply_strategic_voters(sincere(), {B, A, 4})).winner == A);

  const Outcome rv6 = range_winner(six);
  CHECK(rv6.trace.scores[0] == doctest::Approx(2.166).epsilon(5e-4 / 2.166));
  CHECK(rv6.trace.scores[1] == doctest::Approx(2.208).epsilon(5e-4 / 2.208));
}

TEST_CASE("fewest flippers per rule") {
  CHECK(min_flippers(sincere(), Rule{RuleKind::kMjd}, B, A) == 6u);
  CHECK(min_flippers(sincere(), Rule{RuleKind::kRange}, B, A) == 5u);
  CHECK_FALSE(min_flippers(sincere(), Rule{RuleKind::kMajority}, B, A).has_value());
  CHECK_THROWS_AS(min_flippers(sincere(), Rule{RuleKind::kMjd}, A, B), Error);
}

TEST_CASE("attackers are the rightmost supporters") {
  const auto order = strategic_voter_order(sincere(), B, A);
  REQUIRE(order.size() == 40);
  for (std::size_t k = 0; k < order.size(); ++k) CHECK(order[k] == 98 - k);
}

TEST_CASE("attack rejects impossible requests") {
  CHECK_THROWS_AS(apply_strategic_voters(sincere(), {B, A, 41}), Error);
  CHECK_THROWS_AS(apply_strategic_voters(sincere(), {B, B, 1}), Error);
  const Profile ranked = Profile::ranked(2, {RankedBallot{{A, B}}});
  CHECK_THROWS_AS(apply_strategic_voters(ranked, {B, A, 0}), Error);
}

TEST_CASE("weighted ballots split when partly needed") {
  const Profile p = Profile::rated(2, RatingScale::integer(0, 10),
                                   {RatedBallot{{2, 8}}, RatedBallot{{9, 1}}}, {3, 2});
  const Profile q = apply_strategic_voters(p, {B, A, 2});
  CHECK(q.total_weight() == 5);
  CHECK(q.ballot_count() == 3);
  CHECK(q.rated_ballots()[0].ratings == std::vector<double>{2, 8});
  CHECK(q.weight(0) == 1);
  CHECK(q.rated_ballots()[1].ratings == std::vector<double>{1, 9});
  CHECK(q.weight(1) == 2);
}

TEST_CASE("range voting flips stay flipped as attackers are added") {
  bool flipped = false;
  bool mjd_flipped = false;
  for (std::size_t k = 0; k <= 40; ++k) {
    const Profile p = apply_strategic_voters(sincere(), {B, A, k});
    const bool now = range_winner(p).winner == B;
    CHECK_FALSE((flipped && !now));
    flipped = flipped || now;
    const bool mjd_now = mjd_winner(p).winner == B;
    CHECK_FALSE((mjd_flipped && !mjd_now));
    mjd_flipped = mjd_flipped || mjd_now;
  }
  CHECK(flipped);
  CHECK(mjd_flipped);
}

TEST_CASE("exaggeration leaves the majority outcome alone") {
  const auto r = props::attack_preserves_majority(2000, 53);
  INFO(r.first_failure);
  CHECK(r.ok());
  for (std::size_t k = 0; k <= 40; ++k) {
    REQUIRE(majority_rule(apply_strategic_voters(sincere(), {B, A, k})).winner == A);
  }
}

TEST_CASE("discretization bins") {
  CHECK(discretize_rating(0.0) == 1);
  CHECK(discretize_rating(0.49) == 1);
  CHECK(discretize_rating(0.5) == 2);
  CHECK(discretize_rating(2.4999) == 5);
  CHECK(discretize_rating(2.5) == 6);
  CHECK(discretize_rating(3.0) == 6);
  CHECK_THROWS_AS(discretize_rating(-0.01), Error);
  CHECK_THROWS_AS(discretize_rating(3.01), Error);
  CHECK_THROWS_AS(discretize_rating(1.0, 0.0), Error);

  std::mt19937_64 gen(61);
  std::uniform_real_distribution<double> r(0.0, 3.0);
  for (int i = 0; i < 5000; ++i) {
    double x = r(gen);
    double y = r(gen);
    if (x > y) std::swap(x, y);
    REQUIRE(discretize_rating(x) <= discretize_rating(y));
  }
}

TEST_CASE("graded centrist profile: decisive rows") {
  const auto ext = global_rating_extremes(sincere());
  CHECK(discretize_rating(ext.lo) == 1);
  CHECK(discretize_rating(ext.hi) == 6);

  const Profile graded = discretize_profile(sincere());
  CHECK(graded.scale().kind() == ScaleKind::kGraded);
  CHECK(graded.scale().grades().size() == 6);
  const Outcome mj = mj_winner(graded);
  CHECK(mj.trace.scores[0] == mj.trace.scores[1]);
  REQUIRE(mj.trace.tie_break.has_value());
  CHECK(mj.trace.tie_break->row == 39);
  CHECK(mj.trace.tie_break->grades == std::vector<double>{6, 5});
  CHECK(mj.winner == A);

  const Outcome mj6 = mj_winner(discretize_profile(apply_strategic_voters(sincere(), {B, A, 6})));
  REQUIRE(mj6.trace.tie_break.has_value());
  CHECK(mj6.trace.tie_break->row == 41);
  CHECK(mj6.trace.tie_break->grades == std::vector<double>{5, 6});
  CHECK(mj6.winner == B);

  const Outcome mj5 = mj_winner(discretize_profile(apply_strategic_voters(sincere(), {B, A, 5})));
  REQUIRE(mj5.trace.tie_break.has_value());
  CHECK(mj5.trace.tie_break->row == 40);
  CHECK(mj5.winner == B);
}

TEST_CASE("where supporters of the offset candidate sit relative to the medians") {
  const Outcome med = mjd_winner(sincere());
  const double ma = med.trace.scores[0];
  const double mb = med.trace.scores[1];
  int both_above = 0, both_below = 0, central = 0, on_median = 0, other = 0;
  for (const auto& b : sincere().rated_ballots()) {
    const double a = b.ratings[0];
    const double r = b.ratings[1];
    if (!(r > a)) continue;
    if (a == ma || r == mb) {
      ++on_median;
    } else if (a > ma && r > mb) {
      ++both_above;  // can only help by lowering A
    } else if (a < ma && r < mb) {
      ++both_below;  // can only help by raising B
    } else if (a < ma && r > mb) {
      ++central;     // cannot move either median
    } else {
      ++other;
    }
  }
  CHECK(both_above == 15);
  CHECK(both_below == 10);
  CHECK(central == 14);
  CHECK(on_median == 1);
  CHECK(other == 0);
}
