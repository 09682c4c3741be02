#include "votelab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "votelab/random.hpp"

namespace votelab {

std::string to_string(Criterion criterion) {
  switch (criterion) {
    case Criterion::kNoShow: return "no-show";
    case Criterion::kTwin: return "twin";
    case Criterion::kTruncation: return "truncation";
    case Criterion::kMultipleDistricts: return "multiple-districts";
    case Criterion::kScc: return "scc";
  }
  return "unknown";
}

Criterion parse_criterion(std::string_view name) {
  if (name == "no-show" || name == "noshow") return Criterion::kNoShow;
  if (name == "twin") return Criterion::kTwin;
  if (name == "truncation") return Criterion::kTruncation;
  if (name == "multiple-districts" || name == "districts") return Criterion::kMultipleDistricts;
  if (name == "scc" || name == "iia") return Criterion::kScc;
  throw Error("unknown criterion '" + std::string(name) + "'");
}

bool benefits(const Profile& profile, std::size_t ballot, const Outcome& before, const Outcome& after) {
  if (!after.winner) return false;
  const CandidateId gained = *after.winner;
  for (CandidateId old : before.winners()) {
    if (!profile.prefers(ballot, gained, old)) return false;
  }
  return true;
}

namespace {

void require_voters(const Profile& profile, const char* what) {
  if (profile.total_weight() < 2) throw Error(std::string(what) + " needs at least two voters");
}

bool has_twin(const Profile& profile, std::size_t ballot) {
  if (profile.weight(ballot) >= 2) return true;
  for (std::size_t other = 0; other < profile.ballot_count(); ++other) {
    if (other == ballot) continue;
    const bool same = profile.kind() == BallotKind::kRated
                          ? profile.rated_ballots()[other] == profile.rated_ballots()[ballot]
                          : profile.ranked_ballots()[other] == profile.ranked_ballots()[ballot];
    if (same) return true;
  }
  return false;
}

CriterionReport abstention_check(Criterion criterion, const Profile& profile, const Rule& rule) {
  require_voters(profile, criterion == Criterion::kTwin ? "twin check" : "no-show check");
  const Outcome before = rule(profile);
  for (std::size_t b = 0; b < profile.ballot_count(); ++b) {
    if (criterion == Criterion::kTwin && !has_twin(profile, b)) continue;
    Profile altered = without_voter(profile, b);
    Outcome after = rule(altered);
    if (benefits(profile, b, before, after)) {
      return {criterion, true, Witness{{profile}, {before}, std::move(altered), std::move(after), b, {}, {}}};
    }
  }
  return {criterion, false, std::nullopt};
}

std::vector<CandidateId> sorted_winners(const Outcome& outcome) {
  auto w = outcome.winners();
  std::sort(w.begin(), w.end());
  return w;
}

std::vector<CandidateId> restored_winners(const Outcome& reduced, CandidateId removed) {
  std::vector<CandidateId> w;
  for (CandidateId c : reduced.winners()) w.push_back(original_id(c, removed));
  std::sort(w.begin(), w.end());
  return w;
}

}  // namespace

CriterionReport check_no_show(const Profile& profile, const Rule& rule) {
  return abstention_check(Criterion::kNoShow, profile, rule);
}

CriterionReport check_twin(const Profile& profile, const Rule& rule) {
  return abstention_check(Criterion::kTwin, profile, rule);
}

CriterionReport check_truncation(const Profile& profile, const Rule& rule) {
  if (profile.kind() != BallotKind::kRanked) throw Error("truncation requires ranked ballots");
  const Outcome before = rule(profile);
  const auto ballots = profile.ranked_ballots();
  for (std::size_t b = 0; b < ballots.size(); ++b) {
    const auto& ranking = ballots[b].ranking;
    for (std::size_t len = 1; len < ranking.size(); ++len) {
      RankedBallot prefix{{ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(len)}};
      Profile altered = with_replaced_voter(profile, b, std::move(prefix));
      Outcome after = rule(altered);
      if (benefits(profile, b, before, after)) {
        return {Criterion::kTruncation, true,
                Witness{{profile}, {before}, std::move(altered), std::move(after), b, len, {}}};
      }
    }
  }
  return {Criterion::kTruncation, false, std::nullopt};
}

CriterionReport check_multiple_districts(const Profile& first, const Profile& second, const Rule& rule) {
  Profile merged = merge_profiles(first, second);
  Outcome o1 = rule(first);
  Outcome o2 = rule(second);
  if (!o1.winner || o1.winner != o2.winner) return {Criterion::kMultipleDistricts, false, std::nullopt};
  Outcome after = rule(merged);
  if (after.winner == o1.winner) return {Criterion::kMultipleDistricts, false, std::nullopt};
  return {Criterion::kMultipleDistricts, true,
          Witness{{first, second}, {std::move(o1), std::move(o2)}, std::move(merged), std::move(after), {}, {}, {}}};
}

CriterionReport check_scc(const Profile& profile, const Rule& rule) {
  if (profile.candidate_count() < 3) throw Error("scc requires at least three candidates");
  const Outcome before = rule(profile);
  const auto winners = sorted_winners(before);
  for (std::size_t c = 0; c < profile.candidate_count(); ++c) {
    const CandidateId loser = candidate(c);
    if (std::binary_search(winners.begin(), winners.end(), loser)) continue;
    Profile reduced = without_candidate(profile, loser);
    Outcome after = rule(reduced);
    if (restored_winners(after, loser) != winners) {
      return {Criterion::kScc, true,
              Witness{{profile}, {before}, std::move(reduced), std::move(after), {}, {}, loser}};
    }
  }
  return {Criterion::kScc, false, std::nullopt};
}

CriterionReport check(Criterion criterion, const Profile& profile, const Rule& rule) {
  switch (criterion) {
    case Criterion::kNoShow: return check_no_show(profile, rule);
    case Criterion::kTwin: return check_twin(profile, rule);
    case Criterion::kTruncation: return check_truncation(profile, rule);
    case Criterion::kScc: return check_scc(profile, rule);
    case Criterion::kMultipleDistricts:
      throw Error("multiple-districts needs two profiles");
  }
  throw Error("unknown criterion");
}

bool replays(const CriterionReport& report, const Rule& rule) {
  if (!report.violated) return true;
  if (!report.witness) return false;
  const Witness& w = *report.witness;
  if (w.inputs.size() != w.before.size() || w.inputs.empty()) return false;
  for (std::size_t i = 0; i < w.inputs.size(); ++i) {
    if (!(rule(w.inputs[i]) == w.before[i])) return false;
  }
  if (!(rule(w.altered) == w.after)) return false;

  const Profile& p = w.inputs.front();
  switch (report.criterion) {
    case Criterion::kNoShow:
    case Criterion::kTwin:
      return w.ballot && without_voter(p, *w.ballot) == w.altered && benefits(p, *w.ballot, w.before[0], w.after);
    case Criterion::kTruncation: {
      if (!w.ballot || !w.prefix_length) return false;
      const auto& ranking = p.ranked_ballots()[*w.ballot].ranking;
      if (*w.prefix_length == 0 || *w.prefix_length > ranking.size()) return false;
      RankedBallot prefix{{ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(*w.prefix_length)}};
      return with_replaced_voter(p, *w.ballot, prefix) == w.altered && benefits(p, *w.ballot, w.before[0], w.after);
    }
    case Criterion::kMultipleDistricts:
      return w.inputs.size() == 2 && merge_profiles(w.inputs[0], w.inputs[1]) == w.altered &&
             w.before[0].winner && w.before[0].winner == w.before[1].winner && w.after.winner != w.before[0].winner;
    case Criterion::kScc:
      return w.removed_candidate && without_candidate(p, *w.removed_candidate) == w.altered &&
             restored_winners(w.after, *w.removed_candidate) != sorted_winners(w.before[0]);
  }
  return false;
}

namespace {

// The distinct single ballots of a search space, plus how to assemble profiles from them.
class BallotPool {
 public:
  BallotPool(const SearchSpace& space, std::size_t candidates)
      : kind_(space.ballots), candidates_(candidates), grades_(space.grade_count) {
    if (candidates == 0) throw Error("search space needs at least one candidate");
    if (kind_ == BallotSpace::kGraded) {
      if (grades_ < 2) throw Error("graded search space needs at least two grades");
      build_rated();
    } else {
      build_ranked();
    }
  }

  std::size_t size() const { return kind_ == BallotSpace::kGraded ? rated_.size() : ranked_.size(); }

  /// Profile holding each type index in `types` once; repeated indices become weight.
  Profile assemble(const std::vector<std::size_t>& types) const {
    std::vector<std::size_t> sorted = types;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::uint32_t> weights;
    std::vector<std::size_t> distinct;
    for (std::size_t t : sorted) {
      if (!distinct.empty() && distinct.back() == t) {
        ++weights.back();
      } else {
        distinct.push_back(t);
        weights.push_back(1);
      }
    }
    if (kind_ == BallotSpace::kGraded) {
      std::vector<RatedBallot> ballots;
      for (std::size_t t : distinct) ballots.push_back(rated_[t]);
      return Profile::rated(candidates_, RatingScale::integer(0, static_cast<double>(grades_ - 1)),
                            std::move(ballots), std::move(weights));
    }
    std::vector<RankedBallot> ballots;
    for (std::size_t t : distinct) ballots.push_back(ranked_[t]);
    return Profile::ranked(candidates_, std::move(ballots), std::move(weights));
  }

 private:
  void build_ranked() {
    std::vector<CandidateId> perm(candidates_);
    for (std::size_t i = 0; i < candidates_; ++i) perm[i] = candidate(i);
    // Prefixes of length C-1 say the same thing as the full ranking.
    do {
      if (kind_ == BallotSpace::kTruncatedRankings) {
        for (std::size_t len = 1; len + 1 < candidates_; ++len) {
          RankedBallot prefix{{perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(len)}};
          if (std::find(ranked_.begin(), ranked_.end(), prefix) == ranked_.end()) ranked_.push_back(prefix);
        }
      }
      ranked_.push_back(RankedBallot{perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  void build_rated() {
    std::vector<double> ratings(candidates_, 0.0);
    while (true) {
      rated_.push_back(RatedBallot{ratings});
      std::size_t i = 0;
      while (i < candidates_ && ratings[i] == static_cast<double>(grades_ - 1)) ratings[i++] = 0.0;
      if (i == candidates_) break;
      ratings[i] += 1.0;
    }
  }

  BallotSpace kind_;
  std::size_t candidates_;
  std::size_t grades_;
  std::vector<RankedBallot> ranked_;
  std::vector<RatedBallot> rated_;
};

double multiset_count(std::size_t types, std::size_t size) {
  // C(types + size - 1, size)
  double count = 1.0;
  for (std::size_t i = 1; i <= size; ++i) {
    count *= static_cast<double>(types + i - 1) / static_cast<double>(i);
  }
  return std::round(count);
}

// Visits every multiset of `size` type indices in lexicographic order; stops when `visit` returns true.
bool for_each_multiset(std::size_t types, std::size_t size,
                       const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> seq(size, 0);
  while (true) {
    if (visit(seq)) return true;
    std::size_t i = size;
    while (i > 0 && seq[i - 1] == types - 1) --i;
    if (i == 0) return false;
    const std::size_t next = seq[i - 1] + 1;
    for (std::size_t k = i - 1; k < size; ++k) seq[k] = next;
  }
}

void validate_space(const SearchSpace& space) {
  if (space.candidate_counts.empty()) throw Error("search space lists no candidate counts");
  if (space.min_voters == 0 || space.min_voters > space.max_voters) {
    throw Error("search space needs 1 <= min_voters <= max_voters");
  }
}

// Profiles too small for the criterion are passed over.
bool applicable(Criterion criterion, const Profile& profile) {
  switch (criterion) {
    case Criterion::kNoShow:
    case Criterion::kTwin:
      return profile.total_weight() >= 2;
    case Criterion::kScc:
      return profile.candidate_count() >= 3;
    default:
      return true;
  }
}

}  // namespace

double space_size(const SearchSpace& space, Criterion criterion) {
  validate_space(space);
  double total = 0.0;
  double pairs = 0.0;
  for (std::size_t c : space.candidate_counts) {
    const std::size_t types = BallotPool(space, c).size();
    double per_count = 0.0;
    for (std::size_t v = space.min_voters; v <= space.max_voters; ++v) per_count += multiset_count(types, v);
    total += per_count;
    pairs += per_count * per_count;
  }
  return criterion == Criterion::kMultipleDistricts ? pairs : total;
}

SearchResult search_violations(const Rule& rule, Criterion criterion, const SearchSpace& space,
                               std::uint64_t seed, std::uint64_t budget) {
  if (budget == 0) throw Error("search budget must be at least 1");
  validate_space(space);
  if (criterion == Criterion::kScc &&
      std::all_of(space.candidate_counts.begin(), space.candidate_counts.end(), [](std::size_t c) { return c < 3; })) {
    throw Error("scc requires at least three candidates");
  }
  if (criterion == Criterion::kTruncation && space.ballots == BallotSpace::kGraded) {
    throw Error("truncation requires ranked ballots");
  }

  SearchResult result;
  result.exhaustive = space_size(space, criterion) <= kExhaustiveLimit;

  auto examine = [&](const Profile& profile) {
    ++result.examined;
    if (!applicable(criterion, profile)) return false;
    auto report = check(criterion, profile, rule);
    if (report.violated) result.found = std::move(report);
    return result.found.has_value();
  };
  auto examine_pair = [&](const Profile& first, const Profile& second) {
    ++result.examined;
    auto report = check_multiple_districts(first, second, rule);
    if (report.violated) result.found = std::move(report);
    return result.found.has_value();
  };

  if (result.exhaustive) {
    for (std::size_t c : space.candidate_counts) {
      if (criterion == Criterion::kScc && c < 3) continue;
      const BallotPool pool(space, c);
      if (criterion == Criterion::kMultipleDistricts) {
        std::vector<Profile> profiles;
        for (std::size_t v = space.min_voters; v <= space.max_voters; ++v) {
          for_each_multiset(pool.size(), v, [&](const std::vector<std::size_t>& types) {
            profiles.push_back(pool.assemble(types));
            return false;
          });
        }
        for (const auto& first : profiles) {
          for (const auto& second : profiles) {
            if (result.examined >= budget) return result;
            if (examine_pair(first, second)) return result;
          }
        }
        continue;
      }
      for (std::size_t v = space.min_voters; v <= space.max_voters; ++v) {
        const bool stop = for_each_multiset(pool.size(), v, [&](const std::vector<std::size_t>& types) {
          if (result.examined >= budget) return true;
          return examine(pool.assemble(types));
        });
        if (stop) return result;
      }
    }
    result.space_exhausted = true;
    return result;
  }

  std::vector<std::size_t> counts = space.candidate_counts;
  if (criterion == Criterion::kScc) std::erase_if(counts, [](std::size_t c) { return c < 3; });
  std::vector<BallotPool> pools;
  for (std::size_t c : counts) pools.emplace_back(space, c);

  Rng rng(seed);
  auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto random_profile = [&](const BallotPool& pool) {
    const std::size_t voters = space.min_voters + below(space.max_voters - space.min_voters + 1);
    std::vector<std::size_t> types(voters);
    for (auto& t : types) t = below(pool.size());
    return pool.assemble(types);
  };

  while (result.examined < budget) {
    const BallotPool& pool = pools[below(pools.size())];
    if (criterion == Criterion::kMultipleDistricts) {
      const Profile first = random_profile(pool);
      const Profile second = random_profile(pool);
      if (examine_pair(first, second)) break;
    } else if (examine(random_profile(pool))) {
      break;
    }
  }
  return result;
}

}  // namespace votelab
