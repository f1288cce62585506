#include "polyprg/hyph.hpp"

namespace polyprg {

MPoly top_coeff_sum_B(const MPoly& f) {
  if (f.is_zero()) throw PreconditionError("top_coeff_sum_B: zero polynomial");
  if (f.depends_on(Var::t())) throw PreconditionError("top_coeff_sum_B: polynomial contains t");
  const MPoly top = homog_part(f, f.degree());
  return assign(top, Var::y(), f.ctx().one());
}

namespace {

bool is_monic_full_degree(const MPoly& f) {
  const int d = f.degree();
  if (d < 1 || f.degree(Var::y()) != d) return false;
  const MPoly lc = f.coeff_of(Var::y(), static_cast<unsigned>(d));
  return lc.is_constant() && lc.constant_term().is_one();
}

MPoly at_zero_x(const MPoly& f) {
  MPoly g = f;
  for (unsigned i = 1; i <= f.nvars(); ++i) g = assign(g, Var::x(i), f.ctx().zero());
  return g;
}

}  // namespace

HReport check_H(const MPoly& f, bool over_t) {
  if (f.degree() < 1) throw PreconditionError("check_H: polynomial must be non-constant");
  if (!over_t && f.depends_on(Var::t())) throw PreconditionError("check_H: polynomial contains t");
  HReport r;
  r.monic_ok = is_monic_full_degree(f);
  const MPoly f0 = at_zero_x(f);
  const MPoly df0 = partial(f0, Var::y());
  if (f0.degree(Var::y()) < 1) {
    r.resultant = f.zero();
    r.sep_ok = false;
    return r;
  }
  r.resultant = resultant_y(f0, df0);
  r.sep_ok = !r.resultant.is_zero();
  return r;
}

MPoly resultant_profile_t(const MPoly& f, FieldElem c) {
  const int d = f.degree();
  if (static_cast<int>(f.ctx().p()) <= d) throw PreconditionError("resultant_profile_t: characteristic must exceed d");
  if (!is_monic_full_degree(f)) throw PreconditionError("resultant_profile_t: f must be monic in y of full degree");
  if (c.is_zero()) throw PreconditionError("resultant_profile_t: c must be nonzero");
  const MPoly g = f + MPoly::variable(f.field(), f.nvars(), Var::t()) * embed(c, f.ctx());
  const MPoly g0 = at_zero_x(g);
  return resultant_y(g0, partial(g0, Var::y()));
}

void require_char_for_degree(const FieldCtx& field, int d) {
  const std::int64_t need = static_cast<std::int64_t>(d) * (d - 1) + 1;
  if (static_cast<std::int64_t>(field.p()) < need) {
    throw PreconditionError("characteristic " + std::to_string(field.p()) + " is below d(d-1)+1 = " +
                            std::to_string(need));
  }
}

Monicization monicize(const MPoly& f, const HsgSpec& H) {
  const int d = f.degree();
  if (d < 1) throw PreconditionError("monicize: polynomial must have degree at least 1");
  require_char_for_degree(f.ctx(), d);
  if (static_cast<int>(H.D) < d) throw PreconditionError("monicize: HSG degree is below deg f");
  if (H.n != f.nvars()) throw PreconditionError("monicize: HSG arity mismatch");
  const MPoly B = top_coeff_sum_B(f);
  const std::uint64_t total = H.seed_count();
  std::vector<FieldElem> point(f.nvars() + 1, f.ctx().zero());
  for (std::uint64_t s = 0; s < total; ++s) {
    auto a = hsg_eval(H, s, f.ctx());
    std::copy(a.begin(), a.end(), point.begin());
    const FieldElem c = B.eval(point);
    if (c.is_zero()) continue;
    Monicization m;
    m.seed = s;
    m.a = a;
    m.c = c;
    const FieldElem ci = c.inv();
    m.g = shear(f, a) * ci - MPoly::variable(f.field(), f.nvars(), Var::t()) * ci;
    m.report = check_H(m.g, true);
    if (!m.report.pass()) throw ConsistencyError("monicize: normalized polynomial fails Hypothesis (H)");
    return m;
  }
  throw BudgetError("monicize: B vanishes on every HSG seed");
}

}  // namespace polyprg
