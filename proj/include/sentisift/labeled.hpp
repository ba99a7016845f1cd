#pragma once

#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include "sentisift/util.hpp"

namespace sentisift {

// A binary training example. `positive` means "relevant" for the relevance
// classifier and "diagnostic" for the convolutional classifier.
struct LabeledExample {
  std::string text;
  bool positive = false;
};

struct SingleClass : Error {
  using Error::Error;
};
struct NonFiniteLoss : Error {
  using Error::Error;
};

// Labeled file format: one example per line, "<label>\t<text>" with label
// 1 (positive) or 0 (negative).
inline std::vector<LabeledExample> load_labeled(std::istream& in) {
  std::vector<LabeledExample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error("labeled line " + std::to_string(line_no) + ": expected '<label>\\t<text>'");
    const std::string label = line.substr(0, tab);
    std::string text = line.substr(tab + 1);
    if (label != "0" && label != "1")
      throw Error("labeled line " + std::to_string(line_no) + ": label must be 0 or 1, got '" + label + "'");
    if (text.empty()) throw Error("labeled line " + std::to_string(line_no) + ": text must be nonempty");
    out.push_back({std::move(text), label == "1"});
  }
  return out;
}

inline std::vector<LabeledExample> load_labeled(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open labeled file: " + path);
  return load_labeled(in);
}

}  // namespace sentisift
