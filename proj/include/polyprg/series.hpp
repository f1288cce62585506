#pragma once

#include <cstddef>
#include <vector>

#include "polyprg/error.hpp"
#include "polyprg/field.hpp"
#include "polyprg/mpoly.hpp"

namespace polyprg {

// Coefficient-ring helpers shared by FieldElem and MPoly (polynomials in z).
inline FieldElem zero_like(const FieldElem& a) { return a.ctx()->zero(); }
inline MPoly zero_like(const MPoly& a) { return a.zero(); }
inline FieldElem one_like(const FieldElem& a) { return a.ctx()->one(); }
inline MPoly one_like(const MPoly& a) { return a.one(); }
inline FieldElem times_int(const FieldElem& a, std::int64_t m) { return a * a.ctx()->from_int(m); }
inline MPoly times_int(const MPoly& a, std::int64_t m) { return a * a.ctx().from_int(m); }
inline FieldElem unit_inverse(const FieldElem& a) {
  if (a.is_zero()) throw ConsistencyError("series inverse of a non-unit");
  return a.inv();
}
inline MPoly unit_inverse(const MPoly& a) {
  if (!a.is_nonzero_constant()) throw ConsistencyError("series inverse of a non-unit");
  return MPoly::constant(a.field(), a.nvars(), a.constant_term().inv());
}

/// Power series in x truncated at x^precision, coefficients in R.
template <class R>
class Series {
 public:
  Series() = default;
  explicit Series(std::vector<R> c) : c_(std::move(c)) {}
  Series(std::size_t precision, const R& zero) : c_(precision, zero) {}

  std::size_t precision() const { return c_.size(); }
  const R& operator[](std::size_t j) const { return c_[j]; }
  R& operator[](std::size_t j) { return c_[j]; }
  const std::vector<R>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& v : c_)
      if (!v.is_zero()) return false;
    return true;
  }

  Series truncate(std::size_t precision) const {
    std::vector<R> c(c_.begin(), c_.begin() + std::min(precision, c_.size()));
    while (c.size() < precision) c.push_back(zero_like(c_.front()));
    return Series(std::move(c));
  }

  Series operator+(const Series& o) const {
    const std::size_t n = std::min(precision(), o.precision());
    std::vector<R> c;
    c.reserve(n);
    for (std::size_t j = 0; j < n; ++j) c.push_back(c_[j] + o.c_[j]);
    return Series(std::move(c));
  }
  Series operator-(const Series& o) const {
    const std::size_t n = std::min(precision(), o.precision());
    std::vector<R> c;
    c.reserve(n);
    for (std::size_t j = 0; j < n; ++j) c.push_back(c_[j] - o.c_[j]);
    return Series(std::move(c));
  }
  Series operator-() const {
    std::vector<R> c;
    for (const auto& v : c_) c.push_back(-v);
    return Series(std::move(c));
  }
  /// Truncated product; exact in every coefficient below the smaller precision.
  Series operator*(const Series& o) const {
    const std::size_t n = std::min(precision(), o.precision());
    std::vector<R> c(n, zero_like(c_.front()));
    for (std::size_t i = 0; i < n; ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < n; ++j) {
        if (!o.c_[j].is_zero()) c[i + j] = c[i + j] + c_[i] * o.c_[j];
      }
    }
    return Series(std::move(c));
  }
  Series scaled(const R& s) const {
    std::vector<R> c;
    for (const auto& v : c_) c.push_back(v * s);
    return Series(std::move(c));
  }

  /// d/dx; the result is known to one less place.
  Series derivative() const {
    std::vector<R> c;
    for (std::size_t j = 1; j < c_.size(); ++j) c.push_back(times_int(c_[j], static_cast<std::int64_t>(j)));
    if (c.empty()) throw PreconditionError("derivative of a precision-1 series");
    return Series(std::move(c));
  }

  /// Multiplicative inverse; the constant term must be a unit of R.
  Series inverse() const {
    const std::size_t n = precision();
    std::vector<R> b(n, zero_like(c_.front()));
    const R inv0 = unit_inverse(c_[0]);
    b[0] = inv0;
    for (std::size_t j = 1; j < n; ++j) {
      R acc = zero_like(c_.front());
      for (std::size_t i = 1; i <= j; ++i) {
        if (!c_[i].is_zero() && !b[j - i].is_zero()) acc = acc + c_[i] * b[j - i];
      }
      b[j] = -(acc * inv0);
    }
    return Series(std::move(b));
  }

  friend bool operator==(const Series& a, const Series& b) { return a.c_ == b.c_; }

 private:
  std::vector<R> c_;
};

/// Element of R[[x]][y]: a y-polynomial whose coefficients are series
/// truncated at the common precision sigma.
template <class R>
class SeriesPoly {
 public:
  SeriesPoly() = default;
  SeriesPoly(std::vector<Series<R>> c, std::size_t sigma) : c_(std::move(c)), sigma_(sigma) {}

  std::size_t sigma() const { return sigma_; }
  int degree_y() const { return static_cast<int>(c_.size()) - 1; }
  const Series<R>& operator[](std::size_t k) const { return c_[k]; }
  const std::vector<Series<R>>& coeffs() const { return c_; }
  /// coeff(P, x^j y^k).
  const R& coeff(std::size_t j, std::size_t k) const { return c_[k][j]; }

  SeriesPoly operator*(const SeriesPoly& o) const {
    std::vector<Series<R>> c(c_.size() + o.c_.size() - 1, Series<R>(sigma_, zero_like(c_[0][0])));
    for (std::size_t a = 0; a < c_.size(); ++a)
      for (std::size_t b = 0; b < o.c_.size(); ++b) c[a + b] = c[a + b] + c_[a] * o.c_[b];
    return SeriesPoly(std::move(c), sigma_);
  }
  SeriesPoly scaled(const Series<R>& s) const {
    std::vector<Series<R>> c;
    for (const auto& v : c_) c.push_back(v * s);
    return SeriesPoly(std::move(c), std::min(sigma_, s.precision()));
  }

  SeriesPoly derivative_y() const {
    std::vector<Series<R>> c;
    for (std::size_t k = 1; k < c_.size(); ++k) {
      std::vector<R> v;
      for (const auto& e : c_[k].coeffs()) v.push_back(times_int(e, static_cast<std::int64_t>(k)));
      c.emplace_back(std::move(v));
    }
    if (c.empty()) c.push_back(Series<R>(sigma_, zero_like(c_[0][0])));
    return SeriesPoly(std::move(c), sigma_);
  }

  /// P(x, lambda(x)) by Horner's rule, truncated at the smaller precision.
  Series<R> eval_y(const Series<R>& lambda) const {
    const std::size_t n = std::min(sigma_, lambda.precision());
    Series<R> acc = c_.back().truncate(n);
    const Series<R> lam = lambda.truncate(n);
    for (std::size_t k = c_.size() - 1; k-- > 0;) acc = acc * lam + c_[k].truncate(n);
    return acc;
  }

 private:
  std::vector<Series<R>> c_;
  std::size_t sigma_ = 0;
};

/// The linear factor y - lambda as a SeriesPoly.
template <class R>
SeriesPoly<R> linear_factor(const Series<R>& lambda) {
  std::vector<R> one(lambda.precision(), zero_like(lambda[0]));
  one[0] = one_like(lambda[0]);
  return SeriesPoly<R>({-lambda, Series<R>(std::move(one))}, lambda.precision());
}

}  // namespace polyprg
