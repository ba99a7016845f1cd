#pragma once

// Per-word decomposition of the happiness difference between a comparison
// and a reference distribution:
//
//   delta_w = (h_w - h_ref) * (p_comp(w) - p_ref(w))
//
// where p(w) is the word's share of lens-surviving matched tokens in its
// own distribution. The contributions over the surviving vocabulary union
// sum to h_comp - h_ref. Rendered percentages are normalized by |Δh| (not
// by Σ|delta_w|), so a word's percent is its share of the total shift.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sentisift/hedonometer.hpp"

namespace sentisift {

enum class Valence { positive, negative };       // sign of h_w - h_ref (ties positive)
enum class FreqDirection { up, down };           // sign of p_comp - p_ref (ties down)

struct ShiftEntry {
  std::string word;
  double contribution = 0.0;           // signed, in happiness-score units
  std::optional<double> percent;       // 100 * contribution / |Δh|; absent when Δh = 0
  FreqDirection freq_direction = FreqDirection::down;
  Valence valence = Valence::positive;
};

struct WordShift {
  double ref_happiness = 0.0;
  double comp_happiness = 0.0;
  std::vector<ShiftEntry> entries;  // every surviving word, |contribution| descending

  double delta() const { return comp_happiness - ref_happiness; }
};

inline WordShift shift(const FreqDist& ref, const FreqDist& comp, const Lexicon& lexicon, const Lens& lens) {
  const auto ref_score = try_score(ref, lexicon, lens);
  const auto comp_score = try_score(comp, lexicon, lens);
  if (!ref_score) throw NoCoverage("reference distribution has no lexicon coverage after the lens");
  if (!comp_score) throw NoCoverage("comparison distribution has no lexicon coverage after the lens");

  WordShift ws;
  ws.ref_happiness = ref_score->value;
  ws.comp_happiness = comp_score->value;
  const double dh = ws.delta();

  // Surviving vocabulary union. A sorted set keeps downstream ordering
  // reproducible regardless of hash-map iteration order.
  std::set<std::string> words;
  auto collect = [&](const FreqDist& dist) {
    for (const auto& [word, count] : dist.counts) {
      const double* h = lexicon.find(word);
      if (h && !lens.excludes(*h)) words.insert(word);
    }
  };
  collect(ref);
  collect(comp);

  const double ref_total = static_cast<double>(ref_score->matched_tokens);
  const double comp_total = static_cast<double>(comp_score->matched_tokens);
  ws.entries.reserve(words.size());
  for (const auto& word : words) {
    const double h = *lexicon.find(word);
    const double p_ref = static_cast<double>(ref.count(word)) / ref_total;
    const double p_comp = static_cast<double>(comp.count(word)) / comp_total;
    ShiftEntry e;
    e.word = word;
    e.contribution = (h - ws.ref_happiness) * (p_comp - p_ref);
    if (dh != 0.0) e.percent = 100.0 * e.contribution / std::abs(dh);
    e.freq_direction = p_comp > p_ref ? FreqDirection::up : FreqDirection::down;
    e.valence = h >= ws.ref_happiness ? Valence::positive : Valence::negative;
    ws.entries.push_back(std::move(e));
  }
  std::sort(ws.entries.begin(), ws.entries.end(), [](const ShiftEntry& a, const ShiftEntry& b) {
    const double ma = std::abs(a.contribution);
    const double mb = std::abs(b.contribution);
    if (ma != mb) return ma > mb;
    return a.word < b.word;
  });
  return ws;
}

// -------------------------------------------------------------------------
// Renderers (UTF-8 text table and SVG 1.1), both byte-deterministic
// -------------------------------------------------------------------------

namespace detail {
inline const char* valence_symbol(Valence v) { return v == Valence::positive ? "+" : "−"; }
inline const char* direction_arrow(FreqDirection d) { return d == FreqDirection::up ? "↑" : "↓"; }

inline std::string percent_text(const std::optional<double>& percent) {
  return percent ? format_fixed(*percent, 1) + "%" : "—";
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}
}  // namespace detail

inline std::string render_text(const WordShift& ws, std::size_t top_n) {
  if (top_n < 1) throw Error("render_text: top_n must be >= 1");
  const std::size_t n = std::min(top_n, ws.entries.size());
  std::string out;
  out += "word shift: h_ref = " + format_fixed(ws.ref_happiness, 4) +
         ", h_comp = " + format_fixed(ws.comp_happiness, 4) +
         ", Δh = " + format_fixed(ws.delta(), 4) + "\n";
  out += "rank\tword\tsym\tpercent\n";
  for (std::size_t i = 0; i < n; ++i) {
    const ShiftEntry& e = ws.entries[i];
    out += std::to_string(i + 1) + "\t" + e.word + "\t" + detail::valence_symbol(e.valence) +
           detail::direction_arrow(e.freq_direction) + "\t" + detail::percent_text(e.percent) + "\n";
  }
  return out;
}

// Horizontal bar chart; bar length is proportional to |contribution| and
// direction follows its sign.
inline std::string render_svg(const WordShift& ws, std::size_t top_n) {
  if (top_n < 1) throw Error("render_svg: top_n must be >= 1");
  const std::size_t n = std::min(top_n, ws.entries.size());

  const double row_h = 22.0;
  const double margin_top = 48.0;
  const double margin_bottom = 16.0;
  const double label_w = 150.0;
  const double plot_w = 360.0;
  const double width = label_w + plot_w + 40.0;
  const double height = margin_top + row_h * static_cast<double>(n == 0 ? 1 : n) + margin_bottom;
  const double cx = label_w + plot_w / 2.0;  // zero line

  double max_abs = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_abs = std::max(max_abs, std::abs(ws.entries[i].contribution));
  if (max_abs == 0.0) max_abs = 1.0;
  const double scale = (plot_w / 2.0 - 8.0) / max_abs;

  auto num = [](double v) { return format_fixed(v, 2); };
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
  svg += "<text x=\"8\" y=\"18\" font-family=\"monospace\" font-size=\"12\">h_ref = " +
         format_fixed(ws.ref_happiness, 4) + "  h_comp = " + format_fixed(ws.comp_happiness, 4) +
         "  Δh = " + format_fixed(ws.delta(), 4) + "</text>\n";
  // Axes: zero line plus a baseline under the title.
  svg += "<line x1=\"" + num(cx) + "\" y1=\"" + num(margin_top - 10.0) + "\" x2=\"" + num(cx) + "\" y2=\"" +
         num(height - margin_bottom) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + num(label_w) + "\" y1=\"" + num(margin_top - 10.0) + "\" x2=\"" +
         num(label_w + plot_w) + "\" y2=\"" + num(margin_top - 10.0) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  for (std::size_t i = 0; i < n; ++i) {
    const ShiftEntry& e = ws.entries[i];
    const double y = margin_top + row_h * static_cast<double>(i);
    const double len = std::abs(e.contribution) * scale;
    const double x = e.contribution >= 0.0 ? cx : cx - len;
    const char* fill = e.contribution >= 0.0 ? "#e8a33d" : "#4a7dbd";
    svg += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(len) + "\" height=\"" +
           num(row_h - 6.0) + "\" fill=\"" + std::string(fill) + "\"/>\n";
    svg += "<text x=\"8\" y=\"" + num(y + row_h - 10.0) + "\" font-family=\"monospace\" font-size=\"12\">" +
           detail::xml_escape(e.word) + " " + detail::valence_symbol(e.valence) +
           detail::direction_arrow(e.freq_direction) + "</text>\n";
    svg += "<text x=\"" + num(label_w + plot_w + 4.0) + "\" y=\"" + num(y + row_h - 10.0) +
           "\" font-family=\"monospace\" font-size=\"11\">" + detail::percent_text(e.percent) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace sentisift
