#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sentisift/corpus.hpp"

namespace sentisift {

// Neutral stop band excluded before scoring. The band is inclusive at both
// ends; the default covers scores in [4, 6].
struct Lens {
  double center = 5.0;
  double delta = 1.0;

  bool excludes(double score) const { return score >= center - delta && score <= center + delta; }
};

struct HappinessScore {
  double value = 0.0;                 // weighted mean on the 1..9 scale
  std::uint64_t matched_tokens = 0;   // sum of frequencies over surviving words
  std::uint64_t distinct_words = 0;   // surviving vocabulary size
};

struct NoCoverage : Error {
  using Error::Error;
};

// Frequency-weighted mean of word happiness over the words that appear in
// the lexicon and survive the lens. Returns nothing when no word survives.
inline std::optional<HappinessScore> try_score(const FreqDist& dist, const Lexicon& lexicon, const Lens& lens) {
  double weighted = 0.0;
  std::uint64_t matched = 0;
  std::uint64_t distinct = 0;
  for (const auto& [word, count] : dist.counts) {
    const double* h = lexicon.find(word);
    if (!h || lens.excludes(*h)) continue;
    weighted += static_cast<double>(count) * *h;
    matched += count;
    ++distinct;
  }
  if (matched == 0) return std::nullopt;
  HappinessScore s;
  s.value = weighted / static_cast<double>(matched);
  s.matched_tokens = matched;
  s.distinct_words = distinct;
  return s;
}

inline HappinessScore score(const FreqDist& dist, const Lexicon& lexicon, const Lens& lens) {
  auto s = try_score(dist, lexicon, lens);
  if (!s) throw NoCoverage("no word in the distribution survives the lexicon and lens");
  return *s;
}

// -------------------------------------------------------------------------
// Happiness time series
// -------------------------------------------------------------------------

enum class TimeBin { day, month };

struct TimeseriesPoint {
  std::int64_t bin_start = 0;  // UTC epoch seconds of the bin's first instant
  std::optional<HappinessScore> score;  // absent when the bin has no coverage
  std::uint64_t posts = 0;
};

// One point per bin that contains at least one post, ascending by bin start.
template <class PostRange>
std::vector<TimeseriesPoint> timeseries(const PostRange& posts, const Lexicon& lexicon, const Lens& lens,
                                        TimeBin bin) {
  std::map<std::int64_t, std::pair<FreqDist, std::uint64_t>> bins;
  for (const Post& p : posts) {
    const std::int64_t start = bin == TimeBin::day ? utc_day_start(p.timestamp) : utc_month_start(p.timestamp);
    auto& [dist, count] = bins[start];
    for (const auto& tok : tokenize(p.text)) dist.add(tok);
    ++count;
  }
  std::vector<TimeseriesPoint> series;
  series.reserve(bins.size());
  for (const auto& [start, bucket] : bins) {
    TimeseriesPoint pt;
    pt.bin_start = start;
    pt.score = try_score(bucket.first, lexicon, lens);
    pt.posts = bucket.second;
    series.push_back(std::move(pt));
  }
  return series;
}

// -------------------------------------------------------------------------
// Hashtag tables with ambient happiness
// -------------------------------------------------------------------------

struct HashtagRow {
  std::string tag;
  std::uint64_t tweets = 0;  // posts containing the tag
  std::uint64_t users = 0;   // distinct authors of those posts
  std::optional<HappinessScore> ambient;
};

struct HashtagTable {
  std::vector<HashtagRow> rows;
  HashtagRow total;  // aggregate over posts carrying any listed tag
};

enum class HashtagSort { frequency, happiness };

namespace detail {
// Ambient happiness scores the words co-occurring with a tag, so hashtag
// tokens themselves stay out of the distribution.
inline void add_ambient_tokens(FreqDist& dist, const Post& post) {
  for (const auto& tok : tokenize(post.text))
    if (tok[0] != '#') dist.add(tok);
}
}  // namespace detail

// Rows for the top_k hashtags by tweet count. The sort parameter only
// reorders the selected rows; happiness sorts by ambient value descending
// with uncovered tags last.
template <class PostRange>
HashtagTable hashtag_table(const PostRange& posts, const Lexicon& lexicon, const Lens& lens, std::size_t top_k,
                           HashtagSort sort = HashtagSort::frequency) {
  if (top_k < 1) throw Error("hashtag_table: top_k must be >= 1");

  // Pass 1: tweet counts per tag (a tag repeated inside one post counts once).
  std::unordered_map<std::string, std::uint64_t> tweets;
  for (const Post& p : posts) {
    std::unordered_set<std::string> seen(p.hashtags.begin(), p.hashtags.end());
    for (const auto& tag : seen) ++tweets[tag];
  }

  std::vector<std::pair<std::string, std::uint64_t>> ranked(tweets.begin(), tweets.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > top_k) ranked.resize(top_k);

  std::unordered_map<std::string, std::size_t> selected;
  HashtagTable table;
  table.rows.resize(ranked.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    table.rows[i].tag = ranked[i].first;
    table.rows[i].tweets = ranked[i].second;
    selected.emplace(ranked[i].first, i);
  }

  // Pass 2: users and ambient distributions for the selected tags, plus the
  // aggregate over posts carrying any of them (each such post counted once).
  std::vector<std::unordered_set<std::string>> users(ranked.size());
  std::vector<FreqDist> ambient(ranked.size());
  std::unordered_set<std::string> total_users;
  FreqDist total_ambient;
  for (const Post& p : posts) {
    std::unordered_set<std::string> seen(p.hashtags.begin(), p.hashtags.end());
    bool any_selected = false;
    for (const auto& tag : seen) {
      const auto it = selected.find(tag);
      if (it == selected.end()) continue;
      any_selected = true;
      users[it->second].insert(p.user_id);
      detail::add_ambient_tokens(ambient[it->second], p);
    }
    if (any_selected) {
      ++table.total.tweets;
      total_users.insert(p.user_id);
      detail::add_ambient_tokens(total_ambient, p);
    }
  }
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    table.rows[i].users = users[i].size();
    table.rows[i].ambient = try_score(ambient[i], lexicon, lens);
  }
  table.total.tag = "total";
  table.total.users = total_users.size();
  table.total.ambient = try_score(total_ambient, lexicon, lens);

  if (sort == HashtagSort::happiness) {
    std::sort(table.rows.begin(), table.rows.end(), [](const HashtagRow& a, const HashtagRow& b) {
      if (a.ambient.has_value() != b.ambient.has_value()) return a.ambient.has_value();
      if (a.ambient && b.ambient && a.ambient->value != b.ambient->value)
        return a.ambient->value > b.ambient->value;
      return a.tag < b.tag;
    });
  }
  return table;
}

}  // namespace sentisift
