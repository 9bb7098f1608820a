#pragma once

#include <cstddef>
#include <string>
#include <utility>

namespace shrinker {

/// Cursor over a single-line descriptor such as `cylinder:m=2,k=1`. Every
/// failure is a ParseError carrying the 1-based column of the offending text.
class DescriptorLexer {
public:
  DescriptorLexer(std::string source, std::string text, std::size_t column_offset = 0);

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  std::size_t column() const { return column_offset_ + pos_ + 1; }

  /// [A-Za-z_][A-Za-z0-9_]*
  std::string identifier();
  void keyword(const std::string& word);
  void expect(char c);
  std::pair<long long, std::size_t> integer();
  std::pair<double, std::size_t> number();
  void finish();

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(std::size_t column, const std::string& message) const;

private:
  std::string source_;
  std::string text_;
  std::size_t column_offset_;
  std::size_t pos_ = 0;
};

}  // namespace shrinker
