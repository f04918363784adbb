#include "polycert/parser.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "polycert/errors.hpp"

namespace polycert {

Problem::Problem(std::size_t dimension, Polynomial objective,
                 std::vector<Polynomial> constraints,
                 std::optional<std::string> name)
    : dimension_(dimension), name_(std::move(name)) {
  if (dimension == 0) throw InputError("problem dimension must be positive");
  polynomials_.reserve(constraints.size() + 1);
  polynomials_.push_back(std::move(objective));
  for (auto& g : constraints) polynomials_.push_back(std::move(g));
  for (std::size_t i = 0; i < polynomials_.size(); ++i) {
    if (polynomials_[i].dimension() != dimension) {
      throw InputError("polynomial " + std::to_string(i) + " has dimension " +
                       std::to_string(polynomials_[i].dimension()) +
                       ", problem dimension is " + std::to_string(dimension));
    }
  }
}

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view src, std::size_t dimension,
                   const ParseOptions& options, std::size_t line,
                   std::size_t column_offset)
      : src_(src),
        dimension_(dimension),
        options_(options),
        line_(line),
        column_offset_(column_offset) {}

  Polynomial parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    Polynomial p = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + src_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    fail_at(message, pos_);
  }

  [[noreturn]] void fail_at(const std::string& message, std::size_t pos) const {
    throw ParseError(message, line_, column_offset_ + pos + 1);
  }

  bool at_end() const { return pos_ >= src_.size(); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (!at_end() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
      check_cap(acc);
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = multiply(acc, factor(), options_.term_cap);
    return acc;
  }

  Polynomial factor() {
    if (accept('-')) return -factor();
    Polynomial b = base();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      if (!at_end() && src_[pos_] == '-') {
        fail("exponent must be a non-negative integer");
      }
      std::uint32_t e = 0;
      if (!read_uint(e)) fail("expected an integer exponent after '^'");
      if (!at_end() && (src_[pos_] == '.' || src_[pos_] == 'e' ||
                        src_[pos_] == 'E')) {
        fail_at("exponent must be a non-negative integer", start);
      }
      return power(b, e, options_.term_cap);
    }
    return b;
  }

  Polynomial base() {
    skip_space();
    if (at_end()) fail("unexpected end of expression");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x') return variable();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    fail(std::string("unexpected '") + c + "'");
  }

  Polynomial variable() {
    const std::size_t start = pos_;
    ++pos_;
    std::uint32_t index = 0;
    if (!read_uint(index)) fail_at("expected a variable index after 'x'", start);
    const std::string name = "x" + std::to_string(index);
    if (index == 0) fail_at("variable " + name + " is invalid; indices start at 1", start);
    if (index > dimension_) {
      fail_at("variable " + name + " exceeds the problem dimension " +
                  std::to_string(dimension_),
              start);
    }
    if (!at_end() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                      src_[pos_] == '_')) {
      fail_at("malformed variable name", start);
    }
    return Polynomial::variable(dimension_, index - 1);
  }

  Polynomial number() {
    const std::size_t start = pos_;
    std::size_t end = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (end < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[end]))) {
        ++end;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      mantissa += digits();
    }
    if (mantissa == 0) fail_at("malformed number", start);
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      ++end;
      if (end < src_.size() && (src_[end] == '+' || src_[end] == '-')) ++end;
      if (digits() == 0) fail_at("malformed exponent in number", start);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + end, value);
    if (ec != std::errc() || ptr != src_.data() + end) {
      fail_at("number out of range", start);
    }
    pos_ = end;
    if (!at_end() && (std::isalpha(static_cast<unsigned char>(src_[pos_])))) {
      fail("implicit multiplication is not allowed; write '*'");
    }
    return Polynomial::constant(dimension_, value);
  }

  bool read_uint(std::uint32_t& out) {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
    if (pos_ == start) return false;
    auto [ptr, ec] =
        std::from_chars(src_.data() + start, src_.data() + pos_, out);
    if (ec != std::errc()) fail_at("integer too large", start);
    (void)ptr;
    return true;
  }

  void check_cap(const Polynomial& p) const {
    if (p.size() > options_.term_cap) {
      throw ResourceError("expansion exceeds the term cap of " +
                          std::to_string(options_.term_cap));
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t dimension_;
  const ParseOptions& options_;
  std::size_t line_;
  std::size_t column_offset_;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

Polynomial parse_expression(std::string_view source, std::size_t dimension,
                            const ParseOptions& options) {
  if (dimension == 0) throw InputError("dimension must be positive");
  return ExpressionParser(source, dimension, options, 0, 0).parse();
}

Problem parse_problem(std::string_view source, const ParseOptions& options) {
  std::optional<std::size_t> dimension;
  std::optional<Polynomial> objective;
  std::optional<std::string> name;
  std::vector<Polynomial> constraints;

  std::size_t line_no = 0;
  std::size_t line_start = 0;
  while (line_start <= source.size()) {
    std::size_t line_end = source.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = source.size();
    std::string_view raw = source.substr(line_start, line_end - line_start);
    ++line_no;
    const std::size_t next = line_end + 1;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::string_view line = trim(raw);
    if (line.empty()) {
      line_start = next;
      continue;
    }

    std::string_view key;
    std::string_view rest;
    const std::size_t colon = line.find(':');
    const std::size_t space = line.find_first_of(" \t");
    const std::size_t split = std::min(colon, space);
    key = line.substr(0, split);
    rest = split == std::string_view::npos ? std::string_view{}
                                           : line.substr(split + 1);
    if (colon != std::string_view::npos && split == space) {
      // "dim : 2" or "objective : ..." style
      std::string_view between = trim(line.substr(space, colon - space));
      if (between.empty()) rest = line.substr(colon + 1);
    }
    const std::size_t rest_column =
        static_cast<std::size_t>(rest.data() - raw.data());

    if (key == "dim") {
      if (dimension) throw ParseError("duplicate 'dim' line", line_no, 0);
      std::string_view v = trim(rest);
      std::size_t n = 0;
      auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
      if (v.empty() || ec != std::errc() || ptr != v.data() + v.size() || n == 0) {
        throw ParseError("'dim' expects a positive integer", line_no, 0);
      }
      dimension = n;
    } else if (key == "objective" || key == "constraint") {
      if (!dimension) {
        throw ParseError("'dim <n>' must precede '" + std::string(key) + "'",
                         line_no, 0);
      }
      if (key == "objective" && objective) {
        throw ParseError("duplicate 'objective' line", line_no, 0);
      }
      Polynomial p = ExpressionParser(rest, *dimension, options, line_no,
                                      rest_column)
                         .parse();
      if (key == "objective") {
        objective = std::move(p);
      } else {
        constraints.push_back(std::move(p));
      }
    } else if (key == "name") {
      if (name) throw ParseError("duplicate 'name' line", line_no, 0);
      name = std::string(trim(rest));
    } else {
      throw ParseError("unknown directive '" + std::string(key) + "'", line_no, 0);
    }
    line_start = next;
  }

  if (!dimension) throw ParseError("missing 'dim <n>' line", 0, 0);
  if (!objective) throw ParseError("missing 'objective:' line", 0, 0);
  return Problem(*dimension, std::move(*objective), std::move(constraints),
                 std::move(name));
}

}  // namespace polycert
