#include "polyprg/parse.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace polyprg {

namespace {

struct Factor {
  FieldElem coeff;
  std::vector<std::pair<Var, unsigned>> powers;
};

class Parser {
 public:
  Parser(std::string_view s, const Field& field) : s_(s), field_(field) {}

  // Each parsed term: coefficient plus exponent list, with the largest x index seen.
  struct RawTerm {
    FieldElem coeff;
    std::vector<std::pair<unsigned, unsigned>> xs;  // (index, exponent)
    unsigned ey = 0, et = 0;
  };

  std::vector<RawTerm> parse_sum() {
    std::vector<RawTerm> out;
    skip_ws();
    if (pos_ == s_.size()) throw ParseError("empty polynomial", pos_);
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    while (true) {
      RawTerm t = parse_term();
      if (negate) t.coeff = -t.coeff;
      out.push_back(std::move(t));
      skip_ws();
      if (pos_ == s_.size()) break;
      if (peek() != '+' && peek() != '-') throw ParseError("expected '+' or '-'", pos_);
      negate = peek() == '-';
      ++pos_;
    }
    return out;
  }

  unsigned max_x = 0;

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::uint64_t parse_uint() {
    skip_ws();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
      if (v > (std::uint64_t{1} << 40)) throw ParseError("integer too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected integer", start);
    return v;
  }

  unsigned parse_exponent() {
    skip_ws();
    if (peek() != '^') return 1;
    ++pos_;
    const std::size_t at = pos_;
    const std::uint64_t e = parse_uint();
    if (e > 255) throw ParseError("exponent too large", at);
    return static_cast<unsigned>(e);
  }

  // Coefficient in the generator w: '(' w-sum ')'.
  FieldElem parse_w_coeff() {
    const std::size_t open = pos_;
    ++pos_;
    FieldElem acc = field_->zero();
    bool negate = false;
    skip_ws();
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    while (true) {
      FieldElem term = field_->one();
      bool any = false;
      while (true) {
        skip_ws();
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          term *= field_->from_int(static_cast<std::int64_t>(parse_uint() % field_->p()));
        } else if (peek() == 'w') {
          if (field_->k() == 1) throw ParseError("generator w used over a prime field", pos_);
          ++pos_;
          term *= field_->gen().pow(parse_exponent());
        } else {
          throw ParseError("expected coefficient or w", pos_);
        }
        any = true;
        skip_ws();
        if (peek() != '*') break;
        ++pos_;
      }
      (void)any;
      acc += negate ? -term : term;
      skip_ws();
      if (peek() == ')') {
        ++pos_;
        return acc;
      }
      if (peek() != '+' && peek() != '-') throw ParseError("unterminated coefficient", open);
      negate = peek() == '-';
      ++pos_;
    }
  }

  RawTerm parse_term() {
    RawTerm t{field_->one(), {}, 0, 0};
    while (true) {
      skip_ws();
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        t.coeff *= field_->from_int(static_cast<std::int64_t>(parse_uint() % field_->p()));
      } else if (c == '(') {
        t.coeff *= parse_w_coeff();
      } else if (c == 'x') {
        const std::size_t at = pos_;
        ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected variable index", pos_);
        const std::uint64_t idx = parse_uint();
        if (idx < 1 || idx > kMaxXVars) throw ParseError("unknown variable", at);
        const unsigned e = parse_exponent();
        t.xs.push_back({static_cast<unsigned>(idx), e});
        max_x = std::max<unsigned>(max_x, static_cast<unsigned>(idx));
        var_pos_.push_back({static_cast<unsigned>(idx), at});
      } else if (c == 'y') {
        ++pos_;
        t.ey += parse_exponent();
      } else if (c == 't') {
        ++pos_;
        t.et += parse_exponent();
      } else if (c == '\0') {
        throw ParseError("unexpected end of input", pos_);
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
      }
      skip_ws();
      if (peek() != '*') return t;
      ++pos_;
    }
  }

 public:
  std::vector<std::pair<unsigned, std::size_t>> var_pos_;

 private:
  std::string_view s_;
  Field field_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_poly(std::string_view text, const Field& field, std::optional<unsigned> nvars) {
  Parser parser(text, field);
  const auto raw = parser.parse_sum();
  const unsigned n = nvars.value_or(parser.max_x);
  for (auto [idx, at] : parser.var_pos_) {
    if (idx > n) throw ParseError("unknown variable x" + std::to_string(idx), at);
  }
  std::vector<Term> terms;
  for (const auto& r : raw) {
    Monomial m = Monomial::of(Var::y(), r.ey) * Monomial::of(Var::t(), r.et);
    for (auto [idx, e] : r.xs) m = m * Monomial::of(Var::x(idx), e);
    terms.push_back({m, r.coeff.index()});
  }
  return MPoly::from_terms(field, n, std::move(terms));
}

}  // namespace polyprg
