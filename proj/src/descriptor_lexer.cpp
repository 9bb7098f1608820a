#include "shrinker/descriptor_lexer.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "shrinker/error.hpp"

namespace shrinker {

DescriptorLexer::DescriptorLexer(std::string source, std::string text, std::size_t column_offset)
    : source_(std::move(source)), text_(std::move(text)), column_offset_(column_offset) {}

void DescriptorLexer::fail(const std::string& message) const { fail_at(column(), message); }

void DescriptorLexer::fail_at(std::size_t column, const std::string& message) const {
  throw ParseError(source_, 1, column, message);
}

std::string DescriptorLexer::identifier() {
  const std::size_t start = pos_;
  if (at_end() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
    fail("expected an identifier");
  }
  while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
    ++pos_;
  }
  return text_.substr(start, pos_ - start);
}

void DescriptorLexer::keyword(const std::string& word) {
  const std::size_t col = column();
  const std::string got = at_end() ? std::string() : identifier();
  if (got != word) {
    fail_at(col, "expected '" + word + "'" + (got.empty() ? std::string() : ", found '" + got + "'"));
  }
}

void DescriptorLexer::expect(char c) {
  if (peek() != c) {
    fail(std::string("expected '") + c + "'" +
         (at_end() ? std::string(" at end of input") : std::string(", found '") + peek() + "'"));
  }
  ++pos_;
}

std::pair<long long, std::size_t> DescriptorLexer::integer() {
  const std::size_t col = column();
  long long value = 0;
  const char* first = text_.data() + pos_;
  const char* last = text_.data() + text_.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr == first) {
    fail("expected an integer");
  }
  pos_ += static_cast<std::size_t>(ptr - first);
  if (!at_end() && (peek() == '.' || peek() == 'e' || peek() == 'E')) {
    fail_at(col, "expected an integer, found a real number");
  }
  return {value, col};
}

std::pair<double, std::size_t> DescriptorLexer::number() {
  const std::size_t col = column();
  // strtod is used because libstdc++ 11 lacks floating-point from_chars on some targets.
  const std::string rest = text_.substr(pos_);
  char* end = nullptr;
  const double value = std::strtod(rest.c_str(), &end);
  if (end == rest.c_str()) {
    fail("expected a number");
  }
  pos_ += static_cast<std::size_t>(end - rest.c_str());
  return {value, col};
}

void DescriptorLexer::finish() {
  if (!at_end()) {
    fail(std::string("unexpected trailing text '") + text_.substr(pos_) + "'");
  }
}

}  // namespace shrinker
