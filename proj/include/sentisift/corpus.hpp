#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "sentisift/util.hpp"

namespace sentisift {

// -------------------------------------------------------------------------
// Tokenizer
//
// Rules: fold case, replace every character outside {letters, digits, '#',
// '@', apostrophe} with a space, split on whitespace, drop empty tokens.
// '#' and '@' only start a token; one mid-token ends the current token and
// opens a new one, and a bare marker is dropped.
//
// Case folding is table-driven over the Latin, Greek and Cyrillic blocks
// (ASCII, Latin-1, Latin Extended-A, Greek and Coptic, Cyrillic); other
// scripts pass through unfolded. U+2019 is treated as an apostrophe.
// -------------------------------------------------------------------------

namespace detail {

inline char32_t fold_codepoint(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 0x20;
  // Latin-1 supplement, excluding the multiplication sign.
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  // Latin Extended-A comes in upper/lower pairs.
  if (c >= 0x100 && c <= 0x137 && c % 2 == 0 && c != 0x130) return c + 1;
  if (c >= 0x139 && c <= 0x148 && c % 2 == 1) return c + 1;
  if (c >= 0x14A && c <= 0x177 && c % 2 == 0) return c + 1;
  if (c == 0x178) return 0xFF;
  if (c == 0x179 || c == 0x17B || c == 0x17D) return c + 1;
  if (c == 0x17F) return U's';  // long s
  // Greek and Coptic.
  if (c >= 0x391 && c <= 0x3A1) return c + 0x20;
  if (c >= 0x3A3 && c <= 0x3AB) return c + 0x20;
  if (c == 0x3C2) return 0x3C3;  // final sigma
  // Cyrillic.
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  return c;
}

// Non-ASCII punctuation and symbol blocks that separate tokens. Codepoints
// outside these ranges (and >= 0x80) count as word characters.
inline bool is_separator_codepoint(char32_t c) {
  if (c >= 0xA0 && c <= 0xBF) return true;      // Latin-1 punctuation/symbols
  if (c >= 0x2000 && c <= 0x206F) return true;  // general punctuation
  if (c >= 0x20A0 && c <= 0x20CF) return true;  // currency symbols
  if (c >= 0x2100 && c <= 0x2BFF) return true;  // letterlike, arrows, math, misc symbols
  if (c >= 0x2E00 && c <= 0x2E7F) return true;  // supplemental punctuation
  if (c >= 0x3000 && c <= 0x303F) return true;  // CJK punctuation
  if (c >= 0xFE00 && c <= 0xFE6F) return true;  // variation selectors, small forms
  if (c >= 0xFF01 && c <= 0xFF0F) return true;  // fullwidth punctuation
  if (c >= 0xFF1A && c <= 0xFF20) return true;
  if (c >= 0xFF3B && c <= 0xFF40) return true;
  if (c >= 0xFF5B && c <= 0xFF65) return true;
  if (c >= 0x1F000 && c <= 0x1FAFF) return true;  // emoji and friends
  return false;
}

// Decodes the next UTF-8 codepoint. Invalid sequences decode as one
// replacement separator byte so malformed text can never fuse tokens.
inline bool next_codepoint(std::string_view s, std::size_t& i, char32_t& cp) {
  if (i >= s.size()) return false;
  const unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    cp = b0;
    ++i;
    return true;
  }
  int extra = 0;
  char32_t v = 0;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    v = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    v = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    v = b0 & 0x07;
  } else {
    cp = 0xFFFD;
    ++i;
    return true;
  }
  if (i + static_cast<std::size_t>(extra) >= s.size()) {
    cp = 0xFFFD;
    ++i;
    return true;
  }
  char32_t out = v;
  for (int k = 1; k <= extra; ++k) {
    const unsigned char b = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
    if ((b & 0xC0) != 0x80) {
      cp = 0xFFFD;
      ++i;
      return true;
    }
    out = (out << 6) | (b & 0x3F);
  }
  i += static_cast<std::size_t>(extra) + 1;
  cp = out;
  return true;
}

inline void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out += static_cast<char>(c);
  } else if (c < 0x800) {
    out += static_cast<char>(0xC0 | (c >> 6));
    out += static_cast<char>(0x80 | (c & 0x3F));
  } else if (c < 0x10000) {
    out += static_cast<char>(0xE0 | (c >> 12));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (c & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (c >> 18));
    out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (c & 0x3F));
  }
}

}  // namespace detail

inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  bool current_is_bare_marker = false;

  auto flush = [&] {
    if (!current.empty() && !current_is_bare_marker) tokens.push_back(current);
    current.clear();
    current_is_bare_marker = false;
  };

  std::size_t i = 0;
  char32_t cp = 0;
  while (detail::next_codepoint(text, i, cp)) {
    cp = detail::fold_codepoint(cp);
    if (cp == 0x2019) cp = U'\'';

    const bool ascii_word = (cp >= U'a' && cp <= U'z') || (cp >= U'0' && cp <= U'9') || cp == U'\'';
    const bool marker = cp == U'#' || cp == U'@';
    const bool wide_word = cp >= 0x80 && !detail::is_separator_codepoint(cp);

    if (marker) {
      flush();
      detail::append_utf8(current, cp);
      current_is_bare_marker = true;
    } else if (ascii_word || wide_word) {
      detail::append_utf8(current, cp);
      current_is_bare_marker = false;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

// Case-insensitive scan for "http://", "https://" or "www.".
inline bool contains_url(std::string_view text) {
  const std::string lower = to_lower_ascii(text);
  return lower.find("http://") != std::string::npos || lower.find("https://") != std::string::npos ||
         lower.find("www.") != std::string::npos;
}

inline std::vector<std::string> extract_hashtags(std::string_view text) {
  std::vector<std::string> tags;
  for (auto& tok : tokenize(text))
    if (tok.size() > 1 && tok[0] == '#') tags.push_back(std::move(tok));
  return tags;
}

// -------------------------------------------------------------------------
// Post
// -------------------------------------------------------------------------

struct Post {
  std::string id;
  std::string user_id;
  std::int64_t timestamp = 0;  // seconds since epoch, UTC
  std::string text;
  std::string lang = "und";
  bool is_retweet = false;
  // Derived at construction; reproducible from text.
  bool has_url = false;
  std::vector<std::string> hashtags;
};

struct MalformedRecord : Error {
  using Error::Error;
};
struct MissingField : Error {
  using Error::Error;
};

// The only way to build a Post that satisfies the invariants.
inline Post make_post(std::string id, std::string user_id, std::int64_t timestamp, std::string text,
                      std::string lang = "und", bool is_retweet = false) {
  if (id.empty()) throw MalformedRecord("post id must be nonempty");
  if (user_id.empty()) throw MalformedRecord("post user_id must be nonempty");
  if (timestamp < 0) throw MalformedRecord("post timestamp must be >= 0");
  Post p;
  p.id = std::move(id);
  p.user_id = std::move(user_id);
  p.timestamp = timestamp;
  p.text = std::move(text);
  p.lang = to_lower_ascii(lang);
  p.is_retweet = is_retweet;
  p.has_url = contains_url(p.text);
  p.hashtags = extract_hashtags(p.text);
  return p;
}

// -------------------------------------------------------------------------
// Lexicon: word -> happiness score on the 1..9 scale
// -------------------------------------------------------------------------

struct MalformedRow : Error {
  using Error::Error;
};
struct ScoreOutOfRange : Error {
  using Error::Error;
};
struct DuplicateWord : Error {
  using Error::Error;
};

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::string name) : name_(std::move(name)) {}

  void add(const std::string& word, double score) {
    if (score < 1.0 || score > 9.0)
      throw ScoreOutOfRange("score " + format_fixed(score, 4) + " for word '" + word + "' outside [1,9]");
    if (!entries_.emplace(word, score).second) throw DuplicateWord("duplicate lexicon word '" + word + "'");
  }

  const double* find(const std::string& word) const {
    const auto it = entries_.find(word);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return entries_.size(); }
  const std::string& name() const { return name_; }
  const std::unordered_map<std::string, double>& entries() const { return entries_; }

 private:
  std::string name_;
  std::unordered_map<std::string, double> entries_;
};

// Column positions of the word and score fields in a tab-separated lexicon
// file. Extra columns are ignored (LabMT-style files carry rank and stddev).
struct LexiconFormat {
  std::size_t word_col = 0;
  std::size_t score_col = 1;
};

namespace detail {
inline bool parse_score(std::string_view s, double& out) {
  const std::string str{trim(s)};
  if (str.empty()) return false;
  char* end = nullptr;
  out = std::strtod(str.c_str(), &end);
  return end == str.c_str() + str.size();
}
}  // namespace detail

inline Lexicon load_lexicon(std::istream& in, const LexiconFormat& format = {}, std::string name = "lexicon") {
  Lexicon lex(std::move(name));
  const std::size_t need = std::max(format.word_col, format.score_col) + 1;
  std::string line;
  std::size_t line_no = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    const auto cols = split(line, '\t');
    if (cols.size() < need)
      throw MalformedRow("line " + std::to_string(line_no) + ": expected at least " + std::to_string(need) +
                         " tab-separated columns, got " + std::to_string(cols.size()));
    double score = 0;
    if (!detail::parse_score(cols[format.score_col], score)) {
      // A non-numeric score column on the first row is a header.
      if (first_data_line) {
        first_data_line = false;
        continue;
      }
      throw MalformedRow("line " + std::to_string(line_no) + ": non-numeric score '" + cols[format.score_col] + "'");
    }
    first_data_line = false;
    const std::string prefix = "line " + std::to_string(line_no) + ": ";
    try {
      lex.add(cols[format.word_col], score);
    } catch (const ScoreOutOfRange& e) {
      throw ScoreOutOfRange(prefix + e.what());
    } catch (const DuplicateWord& e) {
      throw DuplicateWord(prefix + e.what());
    }
  }
  return lex;
}

inline Lexicon load_lexicon(const std::string& path, const LexiconFormat& format = {}) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon file: " + path);
  return load_lexicon(in, format, path);
}

// -------------------------------------------------------------------------
// FreqDist: word -> count
// -------------------------------------------------------------------------

struct FreqDist {
  std::unordered_map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(const std::string& word, std::uint64_t n = 1) {
    if (n == 0) return;
    counts[word] += n;
    total += n;
  }

  void merge(const FreqDist& other) {
    for (const auto& [word, n] : other.counts) add(word, n);
  }

  std::uint64_t count(const std::string& word) const {
    const auto it = counts.find(word);
    return it == counts.end() ? 0 : it->second;
  }
};

template <class PostRange>
FreqDist freq_dist(const PostRange& posts) {
  FreqDist dist;
  for (const Post& p : posts)
    for (const auto& tok : tokenize(p.text)) dist.add(tok);
  return dist;
}

// -------------------------------------------------------------------------
// Line-delimited post records
//
// One flat JSON object per line. Required: id, user_id, timestamp, text.
// Optional: lang (default "und"), is_retweet (default false). has_url and
// hashtags are derived, never stored.
// -------------------------------------------------------------------------

inline Post parse_post_line(std::string_view line, std::size_t line_no = 0) {
  const std::string where = line_no ? "line " + std::to_string(line_no) + ": " : "";
  nlohmann::json rec;
  try {
    rec = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedRecord(where + "invalid record: " + e.what());
  }
  if (!rec.is_object()) throw MalformedRecord(where + "record is not an object");

  auto require = [&](const char* key) -> const nlohmann::json& {
    const auto it = rec.find(key);
    if (it == rec.end() || it->is_null()) throw MissingField(where + "missing field '" + key + "'");
    return *it;
  };
  const auto& id = require("id");
  const auto& user = require("user_id");
  const auto& ts = require("timestamp");
  const auto& text = require("text");
  if (!id.is_string() || !user.is_string() || !text.is_string() || !ts.is_number_integer())
    throw MalformedRecord(where + "field has wrong type");

  std::string lang = "und";
  if (const auto it = rec.find("lang"); it != rec.end() && !it->is_null()) {
    if (!it->is_string()) throw MalformedRecord(where + "field 'lang' has wrong type");
    lang = it->get<std::string>();
  }
  bool is_retweet = false;
  if (const auto it = rec.find("is_retweet"); it != rec.end() && !it->is_null()) {
    if (!it->is_boolean()) throw MalformedRecord(where + "field 'is_retweet' has wrong type");
    is_retweet = it->get<bool>();
  }
  try {
    return make_post(id.get<std::string>(), user.get<std::string>(), ts.get<std::int64_t>(),
                     text.get<std::string>(), lang, is_retweet);
  } catch (const MalformedRecord& e) {
    throw MalformedRecord(where + e.what());
  }
}

inline std::vector<Post> ingest(std::istream& in) {
  std::vector<Post> posts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    posts.push_back(parse_post_line(line, line_no));
  }
  return posts;
}

inline std::vector<Post> ingest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open post file: " + path);
  return ingest(in);
}

inline std::string serialize_post(const Post& p) {
  nlohmann::ordered_json rec;
  rec["id"] = p.id;
  rec["user_id"] = p.user_id;
  rec["timestamp"] = p.timestamp;
  rec["text"] = p.text;
  rec["lang"] = p.lang;
  rec["is_retweet"] = p.is_retweet;
  return rec.dump();
}

template <class PostRange>
void write_posts(std::ostream& out, const PostRange& posts) {
  for (const Post& p : posts) out << serialize_post(p) << '\n';
}

template <class PostRange>
void write_posts(const std::string& path, const PostRange& posts) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file: " + path);
  write_posts(out, posts);
}

}  // namespace sentisift
