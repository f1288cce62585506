#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyprg/error.hpp"

namespace polyprg {

class FieldCtx;

/// Shared handle to a finite field. Contexts are interned: two handles for
/// the same (p, k) compare equal by pointer.
using Field = std::shared_ptr<const FieldCtx>;

/// Largest field that gets arithmetic tables.
inline constexpr std::uint64_t kFieldSizeBudget = std::uint64_t{1} << 20;

/// An element of F_{p^k}. The index is the base-p encoding of the power-basis
/// coordinates, coefficient 0 least significant, so F_p embeds as indices
/// 0..p-1 and index order is the canonical element order.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(const FieldCtx* ctx, std::uint32_t index) : ctx_(ctx), v_(index) {}

  const FieldCtx* ctx() const { return ctx_; }
  std::uint32_t index() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  FieldElem operator+(FieldElem o) const;
  FieldElem operator-(FieldElem o) const;
  FieldElem operator*(FieldElem o) const;
  FieldElem operator/(FieldElem o) const;
  FieldElem operator-() const;
  FieldElem& operator+=(FieldElem o) { return *this = *this + o; }
  FieldElem& operator-=(FieldElem o) { return *this = *this - o; }
  FieldElem& operator*=(FieldElem o) { return *this = *this * o; }

  FieldElem inv() const;
  FieldElem pow(std::uint64_t e) const;

  /// Power-basis coordinates (k residues mod p).
  std::vector<std::uint32_t> coeffs() const;

  std::string to_string() const;

  friend bool operator==(FieldElem a, FieldElem b) { return a.ctx_ == b.ctx_ && a.v_ == b.v_; }
  friend bool operator<(FieldElem a, FieldElem b) { return a.v_ < b.v_; }

 private:
  const FieldCtx* ctx_ = nullptr;
  std::uint32_t v_ = 0;
};

class FieldCtx {
 public:
  /// F_p. Throws PreconditionError for composite p or p outside the budget.
  static Field prime(std::uint64_t p);
  /// Canonical F_{p^k}: the modulus is the lexicographically smallest monic
  /// irreducible of degree k, coefficients compared low degree first.
  static Field extension(std::uint64_t p, unsigned k);

  std::uint32_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint32_t size() const { return q_; }
  /// Monic modulus, k+1 coefficients low degree first; empty for k = 1.
  std::span<const std::uint32_t> modulus() const { return modulus_; }

  FieldElem zero() const { return {this, 0}; }
  FieldElem one() const { return {this, 1}; }
  FieldElem elem(std::uint32_t index) const;
  FieldElem from_int(std::int64_t v) const;
  /// Root of the modulus (the element with coordinates (0,1,0,...)); for
  /// k = 1 this is 1.
  FieldElem gen() const;
  FieldElem primitive() const { return {this, exp_[1]}; }

  // Index-level arithmetic, used by the hot loops.
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (k_ == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
    return exp_[log_[a] + log_[b]];
  }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  std::string to_string(std::uint32_t a) const;
  /// "p" or "p^k".
  std::string descriptor() const;

  FieldCtx(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus);
  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

 private:
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const;
  void build_tables();

  std::uint32_t p_;
  unsigned k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^i
  std::vector<std::uint32_t> log_;    // log_[0] unused
  std::vector<std::uint32_t> exp_;    // length 2(q-1)
  std::vector<std::int64_t> zech_;    // log(1 + g^i), -1 when 1 + g^i = 0
};

Field mk_prime_field(std::uint64_t p);
Field mk_extension(std::uint64_t p, unsigned k);

/// Parses "p" or "p^k".
Field parse_field(std::string_view descriptor);

bool is_prime(std::uint64_t n);

/// Dense irreducibility test for a monic polynomial over F_p (coefficients
/// low degree first) by trial division with every monic polynomial of degree
/// at most half its degree.
bool is_irreducible_mod_p(std::span<const std::uint32_t> poly, std::uint32_t p);

/// True when `small` is a subfield of `big` (same p, k divides k').
bool is_subfield(const FieldCtx& small, const FieldCtx& big);

/// Image of `a` under the canonical embedding of its field into `target`.
/// For a prime-field source this is coefficient-0 inclusion; otherwise the
/// generator maps to the smallest-index root of the source modulus.
FieldElem embed(FieldElem a, const FieldCtx& target);

struct SplittingResult {
  Field field;
  std::vector<FieldElem> roots;  // ascending index order
};

class MPoly;

/// Smallest extension (degree a multiple of the input degree, at most k_max)
/// over which the univariate polynomial f(y) has deg f distinct roots,
/// found by exhaustive root search.
SplittingResult splitting_field(const MPoly& f, unsigned k_max);

}  // namespace polyprg
