#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyprg/field.hpp"

namespace polyprg {

/// Maximum number of x-variables an MPoly can carry.
inline constexpr unsigned kMaxXVars = 5;

/// A variable slot: x_1..x_5, y, or the reserved auxiliary t.
class Var {
 public:
  static Var x(unsigned i);  // 1-based
  static Var y() { return Var(kY); }
  static Var t() { return Var(kT); }

  bool is_x() const { return slot_ >= 1 && slot_ <= kMaxXVars; }
  bool is_y() const { return slot_ == kY; }
  bool is_t() const { return slot_ == kT; }
  /// 1-based index for x-variables.
  unsigned x_index() const { return slot_; }
  unsigned shift() const;

  friend bool operator==(Var, Var) = default;

 private:
  static constexpr unsigned kY = 0;
  static constexpr unsigned kT = 6;
  explicit Var(unsigned slot) : slot_(slot) {}
  unsigned slot_;
};

/// Exponent vector packed into one word. Byte 7 holds the total degree, then
/// y, x_1..x_5, t in decreasing significance, so integer order is graded
/// lexicographic order with y > x_1 > ... > x_5 > t and multiplication is
/// addition.
class Monomial {
 public:
  constexpr Monomial() = default;
  static Monomial of(Var v, unsigned e);

  unsigned total() const { return static_cast<unsigned>(bits_ >> 56); }
  unsigned exp(Var v) const { return static_cast<unsigned>((bits_ >> v.shift()) & 0xff); }
  /// Total degree in x and y (t excluded).
  unsigned degree_xy() const { return total() - exp(Var::t()); }
  /// Total degree in the x-variables only.
  unsigned degree_x() const { return total() - exp(Var::t()) - exp(Var::y()); }
  Monomial with(Var v, unsigned e) const;
  std::uint64_t bits() const { return bits_; }

  Monomial operator*(Monomial o) const;
  bool divides(Monomial o) const;
  Monomial operator/(Monomial o) const;  // requires divides

  friend bool operator==(Monomial, Monomial) = default;
  friend auto operator<=>(Monomial a, Monomial b) { return a.bits_ <=> b.bits_; }

 private:
  explicit constexpr Monomial(std::uint64_t b) : bits_(b) {}
  std::uint64_t bits_ = 0;
};

struct Term {
  Monomial mono;
  std::uint32_t coeff;  // nonzero field index
};

/// Sparse polynomial in x_1..x_n, y and t over a finite field. Terms are kept
/// sorted in decreasing graded-lex order with no zero coefficients.
class MPoly {
 public:
  MPoly() = default;
  MPoly(Field field, unsigned nvars);

  static MPoly constant(Field field, unsigned nvars, FieldElem c);
  static MPoly constant(Field field, unsigned nvars, std::int64_t c);
  static MPoly variable(Field field, unsigned nvars, Var v);
  static MPoly monomial(Field field, unsigned nvars, Monomial m, FieldElem c);
  /// Builds from unsorted terms; combines duplicates and drops zeros.
  static MPoly from_terms(Field field, unsigned nvars, std::vector<Term> terms);

  const Field& field() const { return field_; }
  const FieldCtx& ctx() const { return *field_; }
  unsigned nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_nonzero_constant() const { return !is_zero() && is_constant(); }
  /// Total degree over all variables including t; -1 for zero.
  int total_degree() const;
  /// Total degree in x and y.
  int degree() const;
  int degree(Var v) const;
  bool depends_on(Var v) const { return degree(v) > 0; }

  FieldElem coeff(Monomial m) const;
  FieldElem constant_term() const { return coeff(Monomial{}); }
  /// Coefficient of v^e as a polynomial in the remaining variables.
  MPoly coeff_of(Var v, unsigned e) const;
  FieldElem lead_coeff() const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator-() const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator*(FieldElem c) const;
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly pow(unsigned e) const;

  /// Polynomial with the same variables and value 0 / 1.
  MPoly zero() const { return MPoly(field_, nvars_); }
  MPoly one() const { return constant(field_, nvars_, field_->one()); }

  /// Evaluation at (x_1..x_n, y); t must be absent, or supplied as a trailing
  /// coordinate.
  FieldElem eval(std::span<const FieldElem> point) const;

  friend bool operator==(const MPoly& a, const MPoly& b);

 private:
  void check_compatible(const MPoly& o) const;

  Field field_;
  unsigned nvars_ = 0;
  std::vector<Term> terms_;
};

MPoly operator*(FieldElem c, const MPoly& f);

/// Substitutes images[i] for x_{i+1}, images[n] for y, and (if present)
/// images[n+1] for t. Images share a field and arity with each other.
MPoly compose(const MPoly& f, std::span<const MPoly> images);

/// s_a: x_i -> x_i + a_i y, y fixed.
MPoly shear(const MPoly& f, std::span<const FieldElem> a);

/// F(x, y) = f(b_1 x + a_1 y, ..., b_n x + a_n y, y) as a bivariate polynomial
/// (x is x_1 of the result).
MPoly plane_restrict(const MPoly& f, std::span<const FieldElem> a, std::span<const FieldElem> b);

/// f(a_1 x, ..., a_n x, y), bivariate.
MPoly line_restrict(const MPoly& f, std::span<const FieldElem> a);

MPoly partial(const MPoly& f, Var v);
MPoly homog_part(const MPoly& f, int d);

/// Substitutes the value c for v.
MPoly assign(const MPoly& f, Var v, FieldElem c);

/// Renames variables: result has `nvars` x-slots and the term exponents of
/// `from` moved to `to`; used to swap x and t for resultants over F[x].
MPoly swap_vars(const MPoly& f, Var a, Var b);

/// Coefficients map through the canonical embedding into `target`.
MPoly change_field(const MPoly& f, const Field& target);

/// Res_y(f, g) as the determinant of the Sylvester matrix laid out with the
/// deg(g) columns of f-coefficients first and a_0, b_0 in the top row.
/// f and g may contain y and t only; the result is a polynomial in t,
/// computed by fraction-free elimination over F[t].
MPoly resultant_y(const MPoly& f, const MPoly& g);

/// q with f = q * g, or nullopt. g must be monic in y (its leading
/// y-coefficient is the constant 1).
std::optional<MPoly> exact_divide(const MPoly& f, const MPoly& g);

/// Graded-lex text form, e.g. "y^2 + 3*x1*y - 1". `xname` names the
/// x-variables (use 'z' for certificate polynomials).
std::string to_string(const MPoly& f, char xname = 'x');

}  // namespace polyprg
