#pragma once

#include <cstdint>
#include <vector>

#include "polyprg/field.hpp"

namespace polyprg {

/// Dense univariate polynomial over a field; the coefficient ring F[t] of
/// resultants taken over a polynomial ring.
class UPoly {
 public:
  UPoly() = default;
  UPoly(const FieldCtx* ctx, std::vector<std::uint32_t> coeffs);
  static UPoly constant(const FieldCtx* ctx, std::uint32_t c) { return UPoly(ctx, {c}); }

  const FieldCtx* ctx() const { return ctx_; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::uint32_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  FieldElem eval(FieldElem x) const;

  /// (quotient, remainder) of division by a nonzero divisor.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  const FieldCtx* ctx_ = nullptr;
  std::vector<std::uint32_t> c_;
};

/// a / b where b divides a; throws ConsistencyError otherwise.
UPoly exact_quotient(const UPoly& a, const UPoly& b);

}  // namespace polyprg
