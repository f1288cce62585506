#pragma once

#include <cstdint>
#include <vector>

#include "polyprg/hsg.hpp"
#include "polyprg/mpoly.hpp"

namespace polyprg {

/// f_d(x, 1) where f_d is the top homogeneous part of f: the y^d
/// coefficient of s_a(f) is B(a).
MPoly top_coeff_sum_B(const MPoly& f);

struct HReport {
  bool monic_ok = false;  // monic in y with deg_y = deg
  bool sep_ok = false;    // Res(f(0,y), df/dy(0,y)) != 0
  MPoly resultant;        // constant, or a polynomial in t when over_t
  bool pass() const { return monic_ok && sep_ok; }
};

/// Evaluates both items of Hypothesis (H). With over_t, f may contain t and
/// the resultant lives in F[t].
HReport check_H(const MPoly& f, bool over_t = false);

/// h(t) = Res((f+ct)(0,y), d(f+ct)/dy(0,y)). Requires char > deg f and f
/// monic in y of full degree.
MPoly resultant_profile_t(const MPoly& f, FieldElem c);

struct Monicization {
  std::uint64_t seed = 0;
  std::vector<FieldElem> a;
  FieldElem c;
  /// c^-1 s_a(f) - c^-1 t.
  MPoly g;
  HReport report;
};

/// First seed of H (in index order) with B(H(seed)) != 0.
Monicization monicize(const MPoly& f, const HsgSpec& H);

/// Throws unless the characteristic is at least d(d-1)+1.
void require_char_for_degree(const FieldCtx& field, int d);

}  // namespace polyprg
