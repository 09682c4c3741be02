#include "votelab/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace votelab {

namespace {

struct CsvRow {
  std::size_t line;
  std::vector<std::string> cells;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

Error line_error(std::size_t line, const std::string& what) {
  return Error("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
      was_quoted = true;
    } else if (ch == ',') {
      cells.push_back(was_quoted ? cell : trim(cell));
      cell.clear();
      was_quoted = false;
    } else {
      cell += ch;
    }
  }
  if (quoted) throw line_error(line_no, "unterminated quote");
  cells.push_back(was_quoted ? cell : trim(cell));
  return cells;
}

std::vector<CsvRow> read_rows(std::string_view text) {
  std::vector<CsvRow> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (!trim(line).empty()) rows.push_back({line_no, split_csv_line(line, line_no)});
    if (end == text.size()) break;
    pos = end + 1;
  }
  return rows;
}

std::optional<double> parse_number(const std::string& s) {
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n ") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

RatingScale inferred_scale(double lo, double hi, bool whole) {
  if (!(lo < hi)) hi = lo + 1.0;
  return whole ? RatingScale::integer(lo, hi) : RatingScale::continuous(lo, hi);
}

std::string scale_kind_name(ScaleKind kind) {
  switch (kind) {
    case ScaleKind::kContinuous: return "continuous";
    case ScaleKind::kInteger: return "integer";
    case ScaleKind::kGraded: return "graded";
  }
  return "continuous";
}

CandidateId lookup(const std::vector<std::string>& names, const std::string& name) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw Error("unknown candidate '" + name + "'");
  return candidate(static_cast<std::size_t>(it - names.begin()));
}

}  // namespace

std::vector<std::string> default_names(std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) {
    names.push_back(i < 26 ? std::string(1, static_cast<char>('A' + i)) : "C" + std::to_string(i + 1));
  }
  return names;
}

BallotFile parse_ballot_csv(std::string_view text) {
  const auto rows = read_rows(text);
  if (rows.empty()) throw line_error(1, "empty ballot file");
  std::vector<std::string> names = rows.front().cells;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw line_error(rows.front().line, "blank candidate name");
    if (std::find(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(i), names[i]) !=
        names.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw line_error(rows.front().line, "duplicate candidate name '" + names[i] + "'");
    }
  }
  if (rows.size() < 2) throw line_error(rows.front().line + 1, "no ballots after the header");

  const std::size_t n = names.size();
  bool all_names = true;
  for (std::size_t r = 1; r < rows.size() && all_names; ++r) {
    for (const auto& cell : rows[r].cells) {
      if (!cell.empty() && std::find(names.begin(), names.end(), cell) == names.end()) all_names = false;
    }
  }

  if (all_names) {
    std::vector<RankedBallot> ballots;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      if (row.cells.size() > n) throw line_error(row.line, "more entries than candidates");
      RankedBallot ballot;
      bool ended = false;
      for (const auto& cell : row.cells) {
        if (cell.empty()) {
          ended = true;
          continue;
        }
        if (ended) throw line_error(row.line, "gap inside a ranking");
        const CandidateId c = lookup(names, cell);
        if (std::find(ballot.ranking.begin(), ballot.ranking.end(), c) != ballot.ranking.end()) {
          throw line_error(row.line, "candidate '" + cell + "' ranked twice");
        }
        ballot.ranking.push_back(c);
      }
      ballots.push_back(std::move(ballot));
    }
    return {names, Profile::ranked(n, std::move(ballots))};
  }

  std::vector<RatedBallot> ballots;
  double lo = INFINITY;
  double hi = -INFINITY;
  bool whole = true;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.cells.size() != n) {
      throw line_error(row.line, "expected " + std::to_string(n) + " ratings, found " +
                                     std::to_string(row.cells.size()));
    }
    RatedBallot ballot;
    for (const auto& cell : row.cells) {
      const auto value = parse_number(cell);
      if (!value) throw line_error(row.line, "'" + cell + "' is not a rating");
      lo = std::min(lo, *value);
      hi = std::max(hi, *value);
      whole = whole && std::floor(*value) == *value;
      ballot.ratings.push_back(*value);
    }
    ballots.push_back(std::move(ballot));
  }
  return {names, Profile::rated(n, inferred_scale(lo, hi, whole), std::move(ballots))};
}

std::string to_ballot_csv(const BallotFile& file) {
  std::string out;
  for (std::size_t i = 0; i < file.candidates.size(); ++i) {
    out += (i ? "," : "") + csv_field(file.candidates[i]);
  }
  out += '\n';
  const Profile& p = file.profile;
  for (std::size_t b = 0; b < p.ballot_count(); ++b) {
    std::string row;
    if (p.kind() == BallotKind::kRated) {
      const auto& r = p.rated_ballots()[b].ratings;
      for (std::size_t i = 0; i < r.size(); ++i) row += fmt::format("{}{}", i ? "," : "", r[i]);
    } else {
      const auto& ranking = p.ranked_ballots()[b].ranking;
      for (std::size_t i = 0; i < p.candidate_count(); ++i) {
        if (i) row += ',';
        if (i < ranking.size()) row += csv_field(file.candidates[index(ranking[i])]);
      }
    }
    for (std::uint32_t w = 0; w < p.weight(b); ++w) out += row + '\n';
  }
  return out;
}

nlohmann::json profile_to_json(const Profile& profile, const std::vector<std::string>& names) {
  nlohmann::json j;
  j["candidates"] = names;
  nlohmann::json ballots = nlohmann::json::array();
  if (profile.kind() == BallotKind::kRated) {
    j["kind"] = "rated";
    const auto& s = profile.scale();
    j["scale"] = {{"kind", scale_kind_name(s.kind())}, {"min", s.min()}, {"max", s.max()}};
    if (s.kind() == ScaleKind::kGraded) j["scale"]["grades"] = s.grades();
    for (const auto& b : profile.rated_ballots()) ballots.push_back(b.ratings);
  } else {
    j["kind"] = "ranked";
    j["unlisted"] = profile.unlisted() == Unlisted::kBottom ? "bottom" : "unranked";
    for (const auto& b : profile.ranked_ballots()) {
      nlohmann::json row = nlohmann::json::array();
      for (CandidateId c : b.ranking) row.push_back(names.at(index(c)));
      ballots.push_back(std::move(row));
    }
  }
  j["ballots"] = std::move(ballots);
  const auto w = profile.weights();
  if (std::any_of(w.begin(), w.end(), [](std::uint32_t x) { return x != 1; })) {
    j["weights"] = std::vector<std::uint32_t>(w.begin(), w.end());
  }
  return j;
}

BallotFile profile_from_json(const nlohmann::json& j) {
  try {
    auto names = j.at("candidates").get<std::vector<std::string>>();
    std::vector<std::uint32_t> weights;
    if (j.contains("weights")) weights = j["weights"].get<std::vector<std::uint32_t>>();
    const std::string kind = j.value("kind", j.contains("scale") ? "rated" : "ranked");

    if (kind == "rated") {
      const auto& sj = j.at("scale");
      const std::string sk = sj.value("kind", "continuous");
      RatingScale scale = sk == "graded"    ? RatingScale::graded(sj.at("grades").get<std::vector<std::string>>())
                          : sk == "integer" ? RatingScale::integer(sj.at("min").get<double>(), sj.at("max").get<double>())
                                            : RatingScale::continuous(sj.at("min").get<double>(), sj.at("max").get<double>());
      std::vector<RatedBallot> ballots;
      for (const auto& row : j.at("ballots")) ballots.push_back({row.get<std::vector<double>>()});
      const std::size_t n = names.size();
      return {std::move(names), Profile::rated(n, std::move(scale), std::move(ballots), std::move(weights))};
    }
    if (kind != "ranked") throw Error("unknown ballot kind '" + kind + "'");
    const Unlisted unlisted = j.value("unlisted", "bottom") == "unranked" ? Unlisted::kUnranked : Unlisted::kBottom;
    std::vector<RankedBallot> ballots;
    for (const auto& row : j.at("ballots")) {
      RankedBallot ballot;
      for (const auto& name : row) ballot.ranking.push_back(lookup(names, name.get<std::string>()));
      ballots.push_back(std::move(ballot));
    }
    const std::size_t n = names.size();
    return {std::move(names), Profile::ranked(n, std::move(ballots), std::move(weights), unlisted)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed ballot JSON: ") + e.what());
  }
}

BallotFile parse_ballot_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("malformed ballot JSON: ") + e.what());
  }
  // A saved criterion report replays its (first) witness profile.
  if (j.is_object() && j.contains("witness")) return witness_input_from_json(j);
  return profile_from_json(j);
}

BallotFile load_ballot_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  return path.extension() == ".json" ? parse_ballot_json(text) : parse_ballot_csv(text);
}

nlohmann::json outcome_to_json(const Outcome& outcome, const std::vector<std::string>& names) {
  nlohmann::json j;
  j["winner"] = outcome.winner ? nlohmann::json(names.at(index(*outcome.winner))) : nlohmann::json(nullptr);
  j["tied"] = nlohmann::json::array();
  for (CandidateId c : outcome.tied) j["tied"].push_back(names.at(index(c)));
  j["rule"] = outcome.trace.rule;
  j[outcome.trace.score_label] = outcome.trace.scores;
  if (!outcome.trace.totals.empty()) j["totals"] = outcome.trace.totals;
  if (const auto& tb = outcome.trace.tie_break) {
    j["tie_break"] = {{"row", tb->row}, {"grades", tb->grades}};
  }
  return j;
}

nlohmann::json report_to_json(const CriterionReport& report, const Rule& rule,
                              const std::vector<std::string>& names) {
  nlohmann::json j;
  j["criterion"] = to_string(report.criterion);
  j["rule"] = rule.name();
  j["violated"] = report.violated;
  if (!report.witness) return j;

  const Witness& w = *report.witness;
  nlohmann::json wj;
  wj["inputs"] = nlohmann::json::array();
  for (const auto& p : w.inputs) wj["inputs"].push_back(profile_to_json(p, names));
  wj["before"] = nlohmann::json::array();
  for (const auto& o : w.before) wj["before"].push_back(outcome_to_json(o, names));

  std::vector<std::string> altered_names = names;
  if (w.removed_candidate) {
    altered_names.erase(altered_names.begin() + static_cast<std::ptrdiff_t>(index(*w.removed_candidate)));
    wj["removed_candidate"] = names.at(index(*w.removed_candidate));
  }
  wj["altered"] = profile_to_json(w.altered, altered_names);
  wj["after"] = outcome_to_json(w.after, altered_names);
  if (w.ballot) wj["ballot"] = *w.ballot;
  if (w.prefix_length) wj["prefix_length"] = *w.prefix_length;
  j["witness"] = std::move(wj);
  return j;
}

BallotFile witness_input_from_json(const nlohmann::json& report, std::size_t i) {
  try {
    return profile_from_json(report.at("witness").at("inputs").at(i));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed report JSON: ") + e.what());
  }
}

}  // namespace votelab
