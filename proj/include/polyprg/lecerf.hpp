#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyprg/field.hpp"
#include "polyprg/matrix.hpp"
#include "polyprg/mpoly.hpp"
#include "polyprg/series.hpp"

namespace polyprg {

/// Default cap on the extension degree used to split f(0,y).
inline constexpr unsigned kDefaultKMax = 12;

/// f moved to the splitting field K of f(0,y), with the roots of f(0,y) in
/// ascending index order. Every lifted root is indexed by its position here.
struct WorkingField {
  Field field;
  MPoly f;
  std::vector<FieldElem> roots;
};

/// Checks Hypothesis (H) and splits f(0,y).
WorkingField prepare(const MPoly& f, unsigned k_max = kDefaultKMax);

/// Coefficients of a bivariate F (x = x1) as an element of K[[x]][y].
SeriesPoly<FieldElem> to_series_poly(const MPoly& F, std::size_t sigma);

/// Coefficients of g = f(z_1 x, ..., z_n x, y) in K[z][[x]][y]; z_i is
/// carried by the slot x_i of an n-variate MPoly without y.
SeriesPoly<MPoly> to_symbolic_series_poly(const MPoly& f, std::size_t sigma);

/// Newton iteration with precision doubling from the simple root `root`.
template <class R>
Series<R> newton_lift(const SeriesPoly<R>& P, const R& root, std::size_t sigma) {
  const SeriesPoly<R> dP = P.derivative_y();
  std::vector<R> init(1, root);
  Series<R> lam(std::move(init));
  std::size_t prec = 1;
  while (prec < sigma) {
    prec = std::min(2 * prec, sigma);
    lam = lam.truncate(prec);
    const Series<R> val = P.eval_y(lam);
    const Series<R> der = dP.eval_y(lam);
    lam = lam - val * der.inverse();
  }
  return lam;
}

/// Lifts each given simple root of F(0,y) to a series root mod x^sigma. F is
/// bivariate over the roots' field.
std::vector<Series<FieldElem>> hensel_lift(const MPoly& F, std::span<const FieldElem> roots, std::size_t sigma);

struct LiftedRoots {
  Field field;
  MPoly F;  // over `field`
  std::vector<Series<FieldElem>> roots;
};

/// Series roots of a bivariate F satisfying (H), over the splitting field
/// of F(0,y).
LiftedRoots hensel_roots(const MPoly& F, std::size_t sigma, unsigned k_max = kDefaultKMax);

struct SymbolicRoots {
  Field field;
  unsigned n = 0;
  std::vector<Series<MPoly>> roots;  // coefficients in K[z_1..z_n]
};

SymbolicRoots symbolic_roots(const MPoly& f, std::size_t sigma, unsigned k_max = kDefaultKMax);
SymbolicRoots symbolic_roots(const WorkingField& w, std::size_t sigma);

enum class Block { DY, DX };

struct RowLabel {
  Block block;
  unsigned j;
  unsigned k;
  friend bool operator==(const RowLabel&, const RowLabel&) = default;
};

std::string to_string(const RowLabel& r);

/// Row index set of the system for d unknowns and precision sigma: the dy
/// block {k <= d-1, d <= j+k <= sigma-1}, then the dx block which adds
/// j <= sigma-2; each block sorted by (k, j).
std::vector<RowLabel> system_rows(unsigned d, unsigned sigma);

template <class R>
struct LinearSystem {
  std::vector<RowLabel> rows;
  Matrix<R> matrix;
  unsigned d = 0;
};

/// Entries coeff(ghat_i dg_i/dy, x^j y^k) and coeff(ghat_i dg_i/dx, x^j y^k)
/// with g_i = y - lambda_i and ghat_i the product of the other g_j.
template <class R>
LinearSystem<R> system_from_roots(const std::vector<Series<R>>& roots, unsigned sigma) {
  const unsigned d = static_cast<unsigned>(roots.size());
  LinearSystem<R> sys;
  sys.d = d;
  sys.rows = system_rows(d, sigma);
  const R zero = zero_like(roots[0][0]);
  sys.matrix = Matrix<R>(sys.rows.size(), d, zero);
  for (unsigned i = 0; i < d; ++i) {
    std::optional<SeriesPoly<R>> ghat;
    for (unsigned l = 0; l < d; ++l) {
      if (l == i) continue;
      const SeriesPoly<R> g = linear_factor(roots[l].truncate(sigma));
      ghat = ghat ? *ghat * g : g;
    }
    if (!ghat) {
      std::vector<R> one(sigma, zero);
      one[0] = one_like(zero);
      ghat = SeriesPoly<R>({Series<R>(std::move(one))}, sigma);
    }
    // dg_i/dx = -lambda_i', known to precision sigma-1.
    const SeriesPoly<R> gx = ghat->scaled(-roots[i].truncate(sigma).derivative());
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
      const RowLabel& lab = sys.rows[r];
      const SeriesPoly<R>& src = lab.block == Block::DY ? *ghat : gx;
      if (static_cast<int>(lab.k) <= src.degree_y()) sys.matrix(r, i) = src.coeff(lab.j, lab.k);
    }
  }
  return sys;
}

/// D_{a,sigma}: built directly from f(a_1 x, ..., a_n x, y) over the
/// working field. Requires sigma >= 2d.
LinearSystem<FieldElem> build_system(const WorkingField& w, std::span<const FieldElem> a, unsigned sigma);
LinearSystem<FieldElem> build_system(const MPoly& f, std::span<const FieldElem> a, unsigned sigma,
                                     unsigned k_max = kDefaultKMax);

/// D_{z,sigma} over K[z]. Requires sigma >= 2d.
LinearSystem<MPoly> build_symbolic_system(const WorkingField& w, unsigned sigma);
LinearSystem<MPoly> build_symbolic_system(const MPoly& f, unsigned sigma, unsigned k_max = kDefaultKMax);

/// Entrywise evaluation of a symbolic system at z = a.
LinearSystem<FieldElem> specialize(const LinearSystem<MPoly>& sys, std::span<const FieldElem> a);

/// Reduced-echelon basis of the solution space.
Matrix<FieldElem> nullspace(const LinearSystem<FieldElem>& sys);

/// Partition of the root indices {0..d-1} by irreducible factor over K.
struct FactorPattern {
  Field field;
  std::vector<std::vector<unsigned>> sets;
  std::vector<MPoly> factors;
  std::size_t sigma_used = 0;
};

/// Minimal-subset recombination of lifted roots, certified by exact
/// division. F is bivariate over the roots' field and monic in y of full
/// degree; roots are simple roots of F(0,y). Retries once with doubled
/// sigma before raising ConsistencyError.
FactorPattern recombine_with_roots(const MPoly& F, std::span<const FieldElem> roots, std::size_t sigma);

/// recombine_with_roots over the splitting field of F(0,y).
FactorPattern recombine_factors(const MPoly& F, std::size_t sigma, unsigned k_max = kDefaultKMax);

/// Reduced echelon form of the indicator vectors of the pattern's sets.
Matrix<FieldElem> indicator_span(const FactorPattern& p, unsigned d);

struct LecerfVerdict {
  bool agree = false;
  std::size_t rows = 0;
  Matrix<FieldElem> nullspace_rref;
  Matrix<FieldElem> indicator_rref;
  FactorPattern pattern;
};

/// Compares the nullspace of D_{a,sigma} with the factorization pattern of
/// f_a = f(a_1 x, ..., a_n x, y). Requires char >= d(d-1)+1 and sigma >= 2d.
LecerfVerdict verify_lecerf(const WorkingField& w, std::span<const FieldElem> a, unsigned sigma);
LecerfVerdict verify_lecerf(const MPoly& f, std::span<const FieldElem> a, unsigned sigma,
                            unsigned k_max = kDefaultKMax);

enum class Bertinian { Good, Bad, Unclassifiable };
std::string to_string(Bertinian b);

struct BertinianResult {
  Bertinian kind = Bertinian::Unclassifiable;
  std::size_t nullity = 0;
  std::size_t pattern_size = 0;
};

/// Good iff the nullspace of D_{a,sigma} has dimension `factors` (1 for
/// irreducible f); cross-checked against recombination of f_a.
BertinianResult bertinian_classify(const WorkingField& w, std::span<const FieldElem> a, unsigned sigma,
                                   std::size_t factors = 1);
BertinianResult bertinian_classify(const MPoly& f, std::span<const FieldElem> a, unsigned sigma,
                                   unsigned k_max = kDefaultKMax);

struct Certificate {
  std::vector<unsigned> subset;  // proper subset of {0..d-1} containing 0
  RowLabel row;
  MPoly Q;  // polynomial in z (slots x_i) over the working field
};

/// One certificate per proper subset containing the first root, in order of
/// size then lexicographic; each uses the first row with nonzero inner
/// product with the subset's indicator.
std::vector<Certificate> bertinian_certificates(const WorkingField& w, unsigned sigma);
std::vector<Certificate> bertinian_certificates(const MPoly& f, unsigned sigma, unsigned k_max = kDefaultKMax);

/// Proper subsets of {0..d-1} containing 0, by size then lexicographic.
std::vector<std::vector<unsigned>> certificate_subsets(unsigned d);

}  // namespace polyprg
