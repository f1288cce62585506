#include "polyprg/fraction.hpp"

#include <charconv>
#include <limits>

#include "polyprg/error.hpp"

namespace polyprg {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    const __int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace

Fraction Fraction::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw PreconditionError("fraction with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr __int128 lim = std::numeric_limits<std::int64_t>::max();
  if (num > lim || num < -lim || den > lim) throw BudgetError("fraction overflows 64 bits");
  Fraction f;
  f.num_ = static_cast<std::int64_t>(num);
  f.den_ = static_cast<std::int64_t>(den);
  return f;
}

Fraction::Fraction(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

std::string Fraction::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Fraction Fraction::operator+(const Fraction& o) const {
  return from_wide(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                   static_cast<__int128>(den_) * o.den_);
}

Fraction Fraction::operator-(const Fraction& o) const {
  return from_wide(static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_,
                   static_cast<__int128>(den_) * o.den_);
}

Fraction Fraction::operator*(const Fraction& o) const {
  return from_wide(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}

Fraction Fraction::operator/(const Fraction& o) const {
  return from_wide(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
}

std::int64_t Fraction::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

Fraction parse_fraction(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw ParseError("invalid number '" + std::string(text) + "'", 0);
    }
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Fraction(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot), frac = text.substr(dot + 1);
    const bool neg = !whole.empty() && whole[0] == '-';
    if (neg) whole.remove_prefix(1);
    if (frac.size() > 15) throw ParseError("too many decimal digits in '" + std::string(text) + "'", 0);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
    const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    Fraction r = Fraction(w) + Fraction(f, scale);
    return neg ? Fraction(0) - r : r;
  }
  return Fraction(parse_int(text));
}

}  // namespace polyprg
