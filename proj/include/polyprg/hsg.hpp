#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyprg/field.hpp"
#include "polyprg/fraction.hpp"
#include "polyprg/mpoly.hpp"

namespace polyprg {

enum class HsgKind { Grid, Kronecker };

std::string to_string(HsgKind kind);
HsgKind parse_hsg_kind(const std::string& name);

/// Largest seed space density_check will enumerate.
inline constexpr std::uint64_t kSeedEnumerationBudget = std::uint64_t{1} << 26;

/// A hitting set generator for n-variate polynomials of degree at most D
/// with vanishing density at most delta.
struct HsgSpec {
  HsgKind kind = HsgKind::Grid;
  unsigned n = 0;
  unsigned D = 0;
  Fraction delta;
  Field field;
  /// The first m field elements in index order.
  std::vector<FieldElem> support;
  /// Kronecker exponents (D+1)^(i-1); empty for the grid kind.
  std::vector<std::uint64_t> exponents;

  /// |T|: m^n for the grid kind, m for the Kronecker kind.
  std::uint64_t seed_count() const;
  /// H(seed) over the construction field. For the grid kind coordinate i is
  /// base-m digit i of the seed, coordinate 1 least significant.
  std::vector<FieldElem> eval(std::uint64_t seed) const;
};

/// Grid over the first m = min(q, ceil(D/delta)) elements. Throws when even
/// the full field cannot meet the density (D/q > delta).
HsgSpec grid_hsg(unsigned n, unsigned D, Fraction delta, const Field& field);

/// H(t) = (t^e_1, ..., t^e_n) with e_i = (D+1)^(i-1) over a support of size
/// ceil(D (D+1)^(n-1) / delta).
HsgSpec kronecker_hsg(unsigned n, unsigned D, Fraction delta, const Field& field);

HsgSpec make_hsg(HsgKind kind, unsigned n, unsigned D, Fraction delta, const Field& field);

/// H(seed) embedded coordinatewise into an extension of the HSG's field.
std::vector<FieldElem> hsg_eval(const HsgSpec& H, std::uint64_t seed, const FieldCtx& target);

/// Exact fraction of seeds s with f(H(s)) = 0. f may live over an extension
/// of the HSG field; its y-coordinate (if any) is ignored, so f must be a
/// polynomial in x_1..x_n only.
Fraction density_check(const HsgSpec& H, const MPoly& f, unsigned workers = 1);

/// C0 (2d-1) / q.
Fraction default_delta(unsigned d, Fraction c0, std::uint64_t q);

}  // namespace polyprg
