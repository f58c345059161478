#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "bloch/error.hpp"
#include "bloch/symbol.hpp"

namespace bloch {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  AnalyticMap parse() {
    AnalyticMap map = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return map;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    throw ParseError(what, at);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  std::string keyword() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string word(text_.substr(start, pos_ - start));
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return word;
  }

  // '+', '-' or U+2212 MINUS SIGN; returns +1 / -1, or 0 without consuming.
  int sign_token() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '+') {
      ++pos_;
      return 1;
    }
    if (pos_ < text_.size() && text_[pos_] == '-') {
      ++pos_;
      return -1;
    }
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return -1;
    }
    return 0;
  }

  double unsigned_real() {
    skip_ws();
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - from;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) fail_at("expected a number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = mark;  // not an exponent after all
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_ || !std::isfinite(value)) {
      fail_at("invalid number", start);
    }
    return value;
  }

  double real() {
    const int s = sign_token();
    const double v = unsigned_real();
    return s < 0 ? -v : v;
  }

  bool imaginary_unit() {
    skip_ws();
    if (pos_ < text_.size() && (text_[pos_] == 'i' || text_[pos_] == 'I')) {
      ++pos_;
      return true;
    }
    return false;
  }

  complex complex_number() {
    const double first = real();
    if (imaginary_unit()) return {0.0, first};
    const std::size_t mark = pos_;
    const int s = sign_token();
    if (s == 0) return {first, 0.0};
    const double second = unsigned_real();
    if (!imaginary_unit()) {
      pos_ = mark;
      fail("expected 'i' after the imaginary part");
    }
    return {first, s * second};
  }

  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    const double v = real();
    if (v != std::floor(v) || std::abs(v) > 1e6) fail_at("expected an integer", start);
    return static_cast<int>(v);
  }

  DiskPoint disk_point(const char* what) {
    skip_ws();
    const std::size_t start = pos_;
    const complex c = complex_number();
    if (std::norm(c) >= 1.0) fail_at(std::string(what) + " must lie inside the unit disk", start);
    return DiskPoint(c);
  }

  template <class Item>
  std::vector<Item> list(Item (Parser::*item)()) {
    std::vector<Item> items{(this->*item)()};
    while (peek(',')) {
      ++pos_;
      items.push_back((this->*item)());
    }
    return items;
  }

  DiskPoint zero() { return disk_point("Blaschke zero"); }

  AnalyticMap expr() {
    skip_ws();
    const std::size_t start = pos_;
    const std::string word = keyword();
    if (word.empty()) fail("expected an expression");
    if (word == "identity") return AnalyticMap::identity();
    static constexpr std::string_view kFunctions[] = {"const", "pow",   "mobius",  "affine", "poly",
                                                      "blaschke", "dilate", "scale", "compose", "sum",
                                                      "product", "sigma"};
    if (std::find(std::begin(kFunctions), std::end(kFunctions), word) == std::end(kFunctions)) {
      fail_at("unknown function '" + word + "'", start);
    }

    expect('(');
    AnalyticMap result = [&]() -> AnalyticMap {
      if (word == "const") return AnalyticMap::constant(complex_number());
      if (word == "pow") {
        skip_ws();
        const std::size_t at = pos_;
        const int j = integer();
        if (j < 1) fail_at("pow exponent must be >= 1", at);
        return AnalyticMap::monomial(j);
      }
      if (word == "mobius") return AnalyticMap::mobius(disk_point("Mobius parameter"));
      if (word == "affine") {
        const complex a = complex_number();
        expect(',');
        return AnalyticMap::affine(a, complex_number());
      }
      if (word == "poly") return AnalyticMap::polynomial(list(&Parser::complex_number));
      if (word == "blaschke") return AnalyticMap::blaschke(list(&Parser::zero));
      if (word == "dilate") {
        skip_ws();
        const std::size_t at = pos_;
        const double r = real();
        if (!(r >= 0.0 && r <= 1.0)) fail_at("dilation radius must lie in [0, 1]", at);
        expect(',');
        return AnalyticMap::dilate(r, expr());
      }
      if (word == "scale") {
        const complex c = complex_number();
        expect(',');
        return AnalyticMap::scale(c, expr());
      }
      if (word == "compose" || word == "sum" || word == "product") {
        AnalyticMap left = expr();
        expect(',');
        AnalyticMap right = expr();
        if (word == "compose") return AnalyticMap::compose(std::move(left), std::move(right));
        if (word == "sum") return AnalyticMap::sum(std::move(left), std::move(right));
        return AnalyticMap::product(std::move(left), std::move(right));
      }
      if (word == "sigma") {
        skip_ws();
        const std::size_t at = pos_;
        const double alpha = real();
        if (!(alpha > 0.0 && alpha <= 8.0)) fail_at("sigma alpha must lie in (0, 8]", at);
        expect(',');
        return AnalyticMap::sigma(SigmaFamily(alpha, disk_point("sigma parameter")));
      }
      fail_at("unknown function '" + word + "'", start);
    }();
    expect(')');
    return result;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

AnalyticMap parse_symbol(std::string_view text) { return Parser(text).parse(); }

}  // namespace bloch
