#include "polyprg/lecerf.hpp"

#include <algorithm>
#include <functional>

#include "polyprg/hyph.hpp"

namespace polyprg {

namespace {

MPoly at_zero_x(const MPoly& f) {
  MPoly g = f;
  for (unsigned i = 1; i <= f.nvars(); ++i) g = assign(g, Var::x(i), f.ctx().zero());
  return g;
}

// F(0,y) as a polynomial with no x-slots, as splitting_field expects.
MPoly univariate_y(const MPoly& F) {
  const MPoly f0 = at_zero_x(F);
  return MPoly::from_terms(F.field(), 0, f0.terms());
}

void require_bivariate(const MPoly& F) {
  if (F.nvars() != 1) throw PreconditionError("expected a bivariate polynomial in x1 and y");
  if (F.depends_on(Var::t())) throw PreconditionError("bivariate input must not contain t");
}

void require_sigma(unsigned d, std::size_t sigma) {
  if (sigma < 2 * static_cast<std::size_t>(d)) {
    throw PreconditionError("sigma = " + std::to_string(sigma) + " is below 2d = " + std::to_string(2 * d));
  }
}

std::vector<FieldElem> embed_point(std::span<const FieldElem> a, const FieldCtx& K) {
  std::vector<FieldElem> out;
  for (auto e : a) out.push_back(embed(e, K));
  return out;
}

}  // namespace

WorkingField prepare(const MPoly& f, unsigned k_max) {
  if (f.depends_on(Var::t())) throw PreconditionError("prepare: polynomial contains t");
  const HReport h = check_H(f);
  if (!h.pass()) {
    throw PreconditionError(std::string("Hypothesis (H) fails: ") +
                            (h.monic_ok ? "f(0,y) is not squarefree" : "f is not monic in y of full degree"));
  }
  auto split = splitting_field(univariate_y(f), k_max);
  return {split.field, change_field(f, split.field), std::move(split.roots)};
}

SeriesPoly<FieldElem> to_series_poly(const MPoly& F, std::size_t sigma) {
  require_bivariate(F);
  const int dy = std::max(0, F.degree(Var::y()));
  std::vector<Series<FieldElem>> c(dy + 1, Series<FieldElem>(sigma, F.ctx().zero()));
  for (const auto& t : F.terms()) {
    const unsigned j = t.mono.exp(Var::x(1));
    if (j < sigma) c[t.mono.exp(Var::y())][j] = F.ctx().elem(t.coeff);
  }
  return SeriesPoly<FieldElem>(std::move(c), sigma);
}

SeriesPoly<MPoly> to_symbolic_series_poly(const MPoly& f, std::size_t sigma) {
  if (f.depends_on(Var::t())) throw PreconditionError("symbolic series: polynomial contains t");
  const unsigned n = f.nvars();
  const MPoly zero(f.field(), n);
  const int dy = std::max(0, f.degree(Var::y()));
  std::vector<std::vector<std::vector<Term>>> terms(dy + 1, std::vector<std::vector<Term>>(sigma));
  for (const auto& t : f.terms()) {
    const unsigned j = t.mono.degree_x();
    if (j >= sigma) continue;
    terms[t.mono.exp(Var::y())][j].push_back({t.mono.with(Var::y(), 0), t.coeff});
  }
  std::vector<Series<MPoly>> c;
  for (auto& row : terms) {
    std::vector<MPoly> s;
    for (auto& cell : row) s.push_back(MPoly::from_terms(f.field(), n, std::move(cell)));
    c.emplace_back(std::move(s));
  }
  return SeriesPoly<MPoly>(std::move(c), sigma);
}

std::vector<Series<FieldElem>> hensel_lift(const MPoly& F, std::span<const FieldElem> roots, std::size_t sigma) {
  if (sigma < 1) throw PreconditionError("hensel_lift: sigma must be positive");
  const auto P = to_series_poly(F, sigma);
  std::vector<Series<FieldElem>> out;
  for (auto r : roots) out.push_back(newton_lift(P, embed(r, F.ctx()), sigma));
  return out;
}

LiftedRoots hensel_roots(const MPoly& F, std::size_t sigma, unsigned k_max) {
  require_bivariate(F);
  WorkingField w = prepare(F, k_max);
  auto roots = hensel_lift(w.f, w.roots, sigma);
  return {w.field, w.f, std::move(roots)};
}

SymbolicRoots symbolic_roots(const WorkingField& w, std::size_t sigma) {
  const auto P = to_symbolic_series_poly(w.f, sigma);
  SymbolicRoots out{w.field, w.f.nvars(), {}};
  for (auto r : w.roots) out.roots.push_back(newton_lift(P, MPoly::constant(w.field, w.f.nvars(), r), sigma));
  return out;
}

SymbolicRoots symbolic_roots(const MPoly& f, std::size_t sigma, unsigned k_max) {
  return symbolic_roots(prepare(f, k_max), sigma);
}

std::string to_string(const RowLabel& r) {
  return std::string(r.block == Block::DY ? "dy" : "dx") + "(j=" + std::to_string(r.j) + ",k=" + std::to_string(r.k) +
         ")";
}

std::vector<RowLabel> system_rows(unsigned d, unsigned sigma) {
  std::vector<RowLabel> rows;
  for (Block b : {Block::DY, Block::DX}) {
    for (unsigned k = 0; k + 1 <= d; ++k) {
      for (unsigned j = 0; j + k + 1 <= sigma; ++j) {
        if (j + k < d) continue;
        if (b == Block::DX && j + 2 > sigma) continue;
        rows.push_back({b, j, k});
      }
    }
  }
  return rows;
}

LinearSystem<FieldElem> build_system(const WorkingField& w, std::span<const FieldElem> a, unsigned sigma) {
  const unsigned d = static_cast<unsigned>(w.roots.size());
  require_sigma(d, sigma);
  if (a.size() != w.f.nvars()) throw PreconditionError("build_system: point arity mismatch");
  const MPoly fa = line_restrict(w.f, embed_point(a, *w.field));
  return system_from_roots(hensel_lift(fa, w.roots, sigma), sigma);
}

LinearSystem<FieldElem> build_system(const MPoly& f, std::span<const FieldElem> a, unsigned sigma, unsigned k_max) {
  return build_system(prepare(f, k_max), a, sigma);
}

LinearSystem<MPoly> build_symbolic_system(const WorkingField& w, unsigned sigma) {
  require_sigma(static_cast<unsigned>(w.roots.size()), sigma);
  return system_from_roots(symbolic_roots(w, sigma).roots, sigma);
}

LinearSystem<MPoly> build_symbolic_system(const MPoly& f, unsigned sigma, unsigned k_max) {
  return build_symbolic_system(prepare(f, k_max), sigma);
}

LinearSystem<FieldElem> specialize(const LinearSystem<MPoly>& sys, std::span<const FieldElem> a) {
  const MPoly& any = sys.matrix(0, 0);
  const FieldCtx& K = any.ctx();
  std::vector<FieldElem> point = embed_point(a, K);
  if (point.size() != any.nvars()) throw PreconditionError("specialize: point arity mismatch");
  point.push_back(K.zero());
  LinearSystem<FieldElem> out;
  out.rows = sys.rows;
  out.d = sys.d;
  out.matrix = Matrix<FieldElem>(sys.matrix.rows(), sys.matrix.cols(), K.zero());
  for (std::size_t r = 0; r < sys.matrix.rows(); ++r)
    for (std::size_t c = 0; c < sys.matrix.cols(); ++c) out.matrix(r, c) = sys.matrix(r, c).eval(point);
  return out;
}

Matrix<FieldElem> nullspace(const LinearSystem<FieldElem>& sys) {
  const FieldCtx& K = *sys.matrix(0, 0).ctx();
  return nullspace(sys.matrix, K);
}

namespace {

// Product of (y - lambda_i) over the subset, as a polynomial when every
// coefficient of x^j y^k with j + k > |S| vanishes below x^sigma.
std::optional<MPoly> truncated_candidate(const MPoly& F, const std::vector<Series<FieldElem>>& lifted,
                                         const std::vector<unsigned>& subset, std::size_t sigma) {
  SeriesPoly<FieldElem> prod = linear_factor(lifted[subset[0]]);
  for (std::size_t i = 1; i < subset.size(); ++i) prod = prod * linear_factor(lifted[subset[i]]);
  const unsigned s = static_cast<unsigned>(subset.size());
  std::vector<Term> terms;
  for (unsigned k = 0; k <= s; ++k) {
    for (unsigned j = 0; j < sigma; ++j) {
      const FieldElem c = prod.coeff(j, k);
      if (c.is_zero()) continue;
      if (j + k > s) return std::nullopt;
      terms.push_back({Monomial::of(Var::x(1), j) * Monomial::of(Var::y(), k), c.index()});
    }
  }
  return MPoly::from_terms(F.field(), 1, std::move(terms));
}

// Subsets of `pool` of the given size in lexicographic order.
void for_each_subset(const std::vector<unsigned>& pool, std::size_t size,
                     const std::function<bool(const std::vector<unsigned>&)>& visit) {
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    std::vector<unsigned> s;
    for (auto i : idx) s.push_back(pool[i]);
    if (visit(s)) return;
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == pool.size() - size + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::optional<FactorPattern> try_recombine(const MPoly& F, std::span<const FieldElem> roots, std::size_t sigma) {
  const auto lifted = hensel_lift(F, roots, sigma);
  FactorPattern out;
  out.field = F.field();
  out.sigma_used = sigma;
  std::vector<unsigned> remaining;
  for (unsigned i = 0; i < roots.size(); ++i) remaining.push_back(i);
  MPoly rest = F;
  while (!remaining.empty()) {
    bool accepted = false;
    for (std::size_t size = 1; size <= remaining.size() && !accepted; ++size) {
      for_each_subset(remaining, size, [&](const std::vector<unsigned>& s) {
        auto cand = truncated_candidate(F, lifted, s, sigma);
        if (!cand) return false;
        auto q = exact_divide(rest, *cand);
        if (!q) return false;
        out.sets.push_back(s);
        out.factors.push_back(*cand);
        rest = *q;
        std::vector<unsigned> next;
        for (auto i : remaining)
          if (!std::binary_search(s.begin(), s.end(), i)) next.push_back(i);
        remaining = std::move(next);
        accepted = true;
        return true;
      });
    }
    if (!accepted) return std::nullopt;
  }
  if (!rest.is_nonzero_constant() || !rest.constant_term().is_one()) return std::nullopt;
  MPoly prod = F.one();
  for (const auto& g : out.factors) prod *= g;
  if (!(prod == F)) throw ConsistencyError("recombination: product of factors differs from the input");
  return out;
}

}  // namespace

FactorPattern recombine_with_roots(const MPoly& F, std::span<const FieldElem> roots, std::size_t sigma) {
  require_bivariate(F);
  const unsigned d = static_cast<unsigned>(roots.size());
  if (F.degree() != static_cast<int>(d) || F.degree(Var::y()) != static_cast<int>(d)) {
    throw PreconditionError("recombine: root count must equal deg F = deg_y F");
  }
  require_sigma(d, sigma);
  if (auto p = try_recombine(F, roots, sigma)) return *p;
  if (auto p = try_recombine(F, roots, 2 * sigma)) return *p;
  throw ConsistencyError("recombine: no factorization pattern found at sigma " + std::to_string(2 * sigma));
}

FactorPattern recombine_factors(const MPoly& F, std::size_t sigma, unsigned k_max) {
  require_bivariate(F);
  WorkingField w = prepare(F, k_max);
  return recombine_with_roots(w.f, w.roots, sigma);
}

Matrix<FieldElem> indicator_span(const FactorPattern& p, unsigned d) {
  const FieldCtx& K = *p.field;
  Matrix<FieldElem> m(p.sets.size(), d, K.zero());
  for (std::size_t r = 0; r < p.sets.size(); ++r)
    for (auto i : p.sets[r]) m(r, i) = K.one();
  return row_space_rref(m, K);
}

LecerfVerdict verify_lecerf(const WorkingField& w, std::span<const FieldElem> a, unsigned sigma) {
  const unsigned d = static_cast<unsigned>(w.roots.size());
  require_char_for_degree(*w.field, static_cast<int>(d));
  require_sigma(d, sigma);
  const MPoly fa = line_restrict(w.f, embed_point(a, *w.field));
  const auto sys = system_from_roots(hensel_lift(fa, w.roots, sigma), sigma);
  LecerfVerdict v;
  v.rows = sys.rows.size();
  v.nullspace_rref = nullspace(sys);
  v.pattern = recombine_with_roots(fa, w.roots, sigma);
  v.indicator_rref = indicator_span(v.pattern, d);
  v.agree = v.nullspace_rref == v.indicator_rref;
  return v;
}

LecerfVerdict verify_lecerf(const MPoly& f, std::span<const FieldElem> a, unsigned sigma, unsigned k_max) {
  return verify_lecerf(prepare(f, k_max), a, sigma);
}

std::string to_string(Bertinian b) {
  switch (b) {
    case Bertinian::Good:
      return "good";
    case Bertinian::Bad:
      return "bad";
    default:
      return "unclassifiable";
  }
}

BertinianResult bertinian_classify(const WorkingField& w, std::span<const FieldElem> a, unsigned sigma,
                                   std::size_t factors) {
  const unsigned d = static_cast<unsigned>(w.roots.size());
  require_sigma(d, sigma);
  BertinianResult res;
  const MPoly fa = line_restrict(w.f, embed_point(a, *w.field));
  if (fa.degree() < 1 || !check_H(fa).pass()) return res;
  const auto sys = system_from_roots(hensel_lift(fa, w.roots, sigma), sigma);
  res.nullity = nullspace(sys).rows();
  res.pattern_size = recombine_with_roots(fa, w.roots, sigma).sets.size();
  if (res.nullity != res.pattern_size) {
    throw ConsistencyError("bertinian_classify: nullspace dimension " + std::to_string(res.nullity) +
                           " disagrees with " + std::to_string(res.pattern_size) + " recombined factors");
  }
  res.kind = res.nullity == factors ? Bertinian::Good : Bertinian::Bad;
  return res;
}

BertinianResult bertinian_classify(const MPoly& f, std::span<const FieldElem> a, unsigned sigma, unsigned k_max) {
  return bertinian_classify(prepare(f, k_max), a, sigma);
}

std::vector<std::vector<unsigned>> certificate_subsets(unsigned d) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> others;
  for (unsigned i = 1; i < d; ++i) others.push_back(i);
  for (std::size_t extra = 0; extra + 1 < d; ++extra) {
    if (extra == 0) {
      out.push_back({0});
      continue;
    }
    for_each_subset(others, extra, [&](const std::vector<unsigned>& s) {
      std::vector<unsigned> full{0};
      full.insert(full.end(), s.begin(), s.end());
      out.push_back(full);
      return false;
    });
  }
  return out;
}

std::vector<Certificate> bertinian_certificates(const WorkingField& w, unsigned sigma) {
  const unsigned d = static_cast<unsigned>(w.roots.size());
  require_char_for_degree(*w.field, static_cast<int>(d));
  require_sigma(d, sigma);
  const auto sys = build_symbolic_system(w, sigma);
  std::vector<Certificate> out;
  for (const auto& subset : certificate_subsets(d)) {
    bool found = false;
    for (std::size_t r = 0; r < sys.rows.size() && !found; ++r) {
      MPoly q(w.field, w.f.nvars());
      for (auto i : subset) q += sys.matrix(r, i);
      if (q.is_zero()) continue;
      out.push_back({subset, sys.rows[r], q});
      found = true;
    }
    if (!found) throw ConsistencyError("bertinian_certificates: every row is orthogonal to a proper subset indicator");
  }
  return out;
}

std::vector<Certificate> bertinian_certificates(const MPoly& f, unsigned sigma, unsigned k_max) {
  return bertinian_certificates(prepare(f, k_max), sigma);
}

}  // namespace polyprg
