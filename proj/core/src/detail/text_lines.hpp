#pragma once

// Line-oriented tokenizer shared by the text readers.

#include <charconv>
#include <cstdlib>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "treecount/errors.hpp"

namespace treecount::detail {

class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  // Next non-blank, non-comment line split on whitespace; false at EOF.
  bool next(std::vector<std::string_view>& tokens) {
    while (std::getline(in_, line_)) {
      ++line_no_;
      tokens.clear();
      std::string_view s(line_);
      std::size_t i = 0;
      while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) ++i;
        std::size_t j = i;
        while (j < s.size() && !is_space(s[j])) ++j;
        if (j > i) tokens.push_back(s.substr(i, j - i));
        i = j;
      }
      if (tokens.empty() || tokens.front().front() == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError(source_ + ":" + std::to_string(line_no_) + ": " + msg);
  }

  long long integer(std::string_view tok, const char* what) const {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
      fail(std::string("expected integer ") + what + ", got '" + std::string(tok) + "'");
    return v;
  }

  double real(std::string_view tok, const char* what) const {
    // strtod keeps the round-trip exact for 17-digit output
    std::string s(tok);
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty())
      fail(std::string("expected number ") + what + ", got '" + s + "'");
    return v;
  }

  int line_no() const { return line_no_; }
  const std::string& source() const { return source_; }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

  std::istream& in_;
  std::string source_;
  std::string line_;
  int line_no_ = 0;
};

}  // namespace treecount::detail
