#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sentisift/corpus.hpp"

namespace sentisift {

// The twelve astrological indicators filtered before classification.
inline const std::vector<std::string>& default_horoscope_terms() {
  static const std::vector<std::string> terms = {
      "astrology", "zodiac", "astronomy", "horoscope", "aquarius", "pisces",
      "aries",     "taurus", "leo",       "virgo",     "libra",    "scorpio",
  };
  return terms;
}

struct FilterConfig {
  bool drop_urls = true;
  bool drop_retweets = true;
  std::vector<std::string> horoscope_terms = default_horoscope_terms();
  std::set<std::string> allowed_langs = {"en"};  // empty set disables the language rule
  std::vector<std::string> keyword_query;        // AND-required lowercase terms
};

struct FilterReport {
  std::uint64_t input_count = 0;
  std::uint64_t kept_count = 0;
  std::uint64_t removed_by_url = 0;
  std::uint64_t removed_by_retweet = 0;
  std::uint64_t removed_by_horoscope = 0;
  std::uint64_t removed_by_lang = 0;
  std::uint64_t removed_by_query = 0;

  std::uint64_t removed_total() const {
    return removed_by_url + removed_by_retweet + removed_by_horoscope + removed_by_lang + removed_by_query;
  }
};

struct FilterOutcome {
  std::vector<Post> kept;
  FilterReport report;
};

inline bool match_keywords(const std::vector<std::string>& tokens, const std::vector<std::string>& terms) {
  if (terms.empty()) return true;
  const std::unordered_set<std::string> set(tokens.begin(), tokens.end());
  for (const auto& term : terms)
    if (!set.count(term)) return false;
  return true;
}

// True iff every term appears as a token of the post's text.
inline bool match_keywords(const Post& post, const std::vector<std::string>& terms) {
  if (terms.empty()) return true;
  return match_keywords(tokenize(post.text), terms);
}

// Applies the pre-classification rules in a fixed order (url, retweet,
// horoscope, lang, query); each removed post is attributed to the first
// rule that rejected it, which keeps the report sums exact.
template <class PostRange>
FilterOutcome apply_filters(const PostRange& posts, const FilterConfig& config) {
  FilterOutcome out;
  const std::unordered_set<std::string> horoscope(config.horoscope_terms.begin(), config.horoscope_terms.end());
  for (const Post& post : posts) {
    ++out.report.input_count;
    if (config.drop_urls && post.has_url) {
      ++out.report.removed_by_url;
      continue;
    }
    if (config.drop_retweets && post.is_retweet) {
      ++out.report.removed_by_retweet;
      continue;
    }
    const auto tokens = tokenize(post.text);
    bool astro = false;
    for (const auto& tok : tokens)
      if (horoscope.count(tok)) {
        astro = true;
        break;
      }
    if (astro) {
      ++out.report.removed_by_horoscope;
      continue;
    }
    if (!config.allowed_langs.empty() && !config.allowed_langs.count(post.lang)) {
      ++out.report.removed_by_lang;
      continue;
    }
    if (!match_keywords(tokens, config.keyword_query)) {
      ++out.report.removed_by_query;
      continue;
    }
    ++out.report.kept_count;
    out.kept.push_back(post);
  }
  return out;
}

// -------------------------------------------------------------------------
// User activity statistics
// -------------------------------------------------------------------------

struct UserActivity {
  std::map<std::uint64_t, std::uint64_t> histogram;  // posts-per-user -> number of users
  std::uint64_t distinct_users = 0;
  std::uint64_t max_posts_per_user = 0;
  std::optional<double> mean_posts_per_user;  // absent for empty input
  std::uint64_t below_threshold = 0;          // the k in share_below
  double share_below = 0.0;                   // fraction of users with fewer than k posts
};

template <class PostRange>
UserActivity user_activity(const PostRange& posts, std::uint64_t below_threshold = 10) {
  std::unordered_map<std::string, std::uint64_t> per_user;
  std::uint64_t total = 0;
  for (const Post& p : posts) {
    ++per_user[p.user_id];
    ++total;
  }
  UserActivity stats;
  stats.below_threshold = below_threshold;
  stats.distinct_users = per_user.size();
  std::uint64_t below = 0;
  for (const auto& [user, n] : per_user) {
    ++stats.histogram[n];
    stats.max_posts_per_user = std::max(stats.max_posts_per_user, n);
    if (n < below_threshold) ++below;
  }
  if (stats.distinct_users > 0) {
    stats.mean_posts_per_user = static_cast<double>(total) / static_cast<double>(stats.distinct_users);
    stats.share_below = static_cast<double>(below) / static_cast<double>(stats.distinct_users);
  }
  return stats;
}

}  // namespace sentisift
