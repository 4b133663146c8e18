#include "json_locate.hpp"

#include <algorithm>

namespace relupwa::detail {

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::size_t locate(const JsonPath& path) {
    skip_ws();
    std::size_t found = pos_;
    for (const auto& step : path) {
      found = pos_;
      if (!descend(step)) return line_of_offset(text_, found);
      skip_ws();
    }
    return line_of_offset(text_, pos_);
  }

 private:
  bool descend(const JsonPathStep& step) {
    if (const auto* key = std::get_if<std::string>(&step)) {
      if (peek() != '{') return false;
      ++pos_;
      while (true) {
        skip_ws();
        if (peek() != '"') return false;
        const std::string k = read_string();
        skip_ws();
        if (peek() != ':') return false;
        ++pos_;
        skip_ws();
        if (k == *key) return true;
        skip_value();
        skip_ws();
        if (peek() != ',') return false;
        ++pos_;
      }
    }
    const std::size_t index = std::get<std::size_t>(step);
    if (peek() != '[') return false;
    ++pos_;
    for (std::size_t i = 0;; ++i) {
      skip_ws();
      if (peek() == ']') return false;
      if (i == index) return true;
      skip_value();
      skip_ws();
      if (peek() != ',') return false;
      ++pos_;
    }
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }

  std::string read_string() {
    std::string s;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      if (pos_ < text_.size()) s += text_[pos_++];
    }
    ++pos_;
    return s;
  }

  void skip_value() {
    int depth = 0;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '"') {
        read_string();
        if (depth == 0) return;
        continue;
      }
      if (c == '{' || c == '[') ++depth;
      if (c == '}' || c == ']') {
        if (depth == 0) return;
        if (--depth == 0) {
          ++pos_;
          return;
        }
      }
      if (c == ',' && depth == 0) return;
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

std::size_t json_line_of(std::string_view text, const JsonPath& path) { return Scanner(text).locate(path); }

std::string to_string(const JsonPath& path) {
  std::string s;
  for (const auto& step : path) {
    if (const auto* key = std::get_if<std::string>(&step))
      s += (s.empty() ? "" : ".") + *key;
    else
      s += "[" + std::to_string(std::get<std::size_t>(step)) + "]";
  }
  return s.empty() ? "<root>" : s;
}

}  // namespace relupwa::detail
