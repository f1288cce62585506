#include "polyprg/hsg.hpp"

#include <thread>

namespace polyprg {

std::string to_string(HsgKind kind) { return kind == HsgKind::Grid ? "grid" : "kronecker"; }

HsgKind parse_hsg_kind(const std::string& name) {
  if (name == "grid") return HsgKind::Grid;
  if (name == "kronecker") return HsgKind::Kronecker;
  throw PreconditionError("unknown HSG kind '" + name + "'");
}

std::uint64_t HsgSpec::seed_count() const {
  if (kind == HsgKind::Kronecker) return support.size();
  std::uint64_t c = 1;
  for (unsigned i = 0; i < n; ++i) {
    c *= support.size();
    if (c > (std::uint64_t{1} << 62)) throw BudgetError("seed space too large");
  }
  return c;
}

std::vector<FieldElem> HsgSpec::eval(std::uint64_t seed) const {
  std::vector<FieldElem> out;
  out.reserve(n);
  if (kind == HsgKind::Grid) {
    const std::uint64_t m = support.size();
    for (unsigned i = 0; i < n; ++i) {
      out.push_back(support[seed % m]);
      seed /= m;
    }
    if (seed != 0) throw PreconditionError("seed outside the seed space");
  } else {
    if (seed >= support.size()) throw PreconditionError("seed outside the seed space");
    const FieldElem t = support[seed];
    for (unsigned i = 0; i < n; ++i) out.push_back(t.pow(exponents[i]));
  }
  return out;
}

namespace {

void check_common(unsigned n, const Fraction& delta) {
  if (n == 0 || n > kMaxXVars) throw PreconditionError("HSG variable count must be in 1..5");
  if (delta <= Fraction(0)) throw PreconditionError("HSG density slack must be positive");
}

std::vector<FieldElem> first_elements(const Field& field, std::uint64_t m) {
  std::vector<FieldElem> s;
  for (std::uint64_t i = 0; i < m; ++i) s.push_back(field->elem(static_cast<std::uint32_t>(i)));
  return s;
}

}  // namespace

HsgSpec grid_hsg(unsigned n, unsigned D, Fraction delta, const Field& field) {
  check_common(n, delta);
  const std::uint64_t q = field->size();
  const std::uint64_t want = static_cast<std::uint64_t>((Fraction(D) / delta).ceil());
  const std::uint64_t m = std::max<std::uint64_t>(1, std::min(q, want));
  if (Fraction(D, static_cast<std::int64_t>(m)) > delta) {
    throw PreconditionError("grid HSG: D/q = " + Fraction(D, static_cast<std::int64_t>(q)).to_string() +
                            " exceeds delta = " + delta.to_string());
  }
  HsgSpec h;
  h.kind = HsgKind::Grid;
  h.n = n;
  h.D = D;
  h.delta = delta;
  h.field = field;
  h.support = first_elements(field, m);
  return h;
}

HsgSpec kronecker_hsg(unsigned n, unsigned D, Fraction delta, const Field& field) {
  check_common(n, delta);
  std::vector<std::uint64_t> e(n, 1);
  for (unsigned i = 1; i < n; ++i) e[i] = e[i - 1] * (D + 1);
  const std::uint64_t composed = static_cast<std::uint64_t>(D) * e[n - 1];
  const std::uint64_t m = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>((Fraction(static_cast<std::int64_t>(composed)) / delta).ceil()));
  if (m > field->size()) {
    throw PreconditionError("kronecker HSG: support of size " + std::to_string(m) + " exceeds the field size " +
                            std::to_string(field->size()));
  }
  HsgSpec h;
  h.kind = HsgKind::Kronecker;
  h.n = n;
  h.D = D;
  h.delta = delta;
  h.field = field;
  h.support = first_elements(field, m);
  h.exponents = std::move(e);
  return h;
}

HsgSpec make_hsg(HsgKind kind, unsigned n, unsigned D, Fraction delta, const Field& field) {
  return kind == HsgKind::Grid ? grid_hsg(n, D, delta, field) : kronecker_hsg(n, D, delta, field);
}

std::vector<FieldElem> hsg_eval(const HsgSpec& H, std::uint64_t seed, const FieldCtx& target) {
  if (!is_subfield(*H.field, target)) {
    throw PreconditionError("hsg_eval: target F_" + target.descriptor() + " does not extend F_" +
                            H.field->descriptor());
  }
  auto pt = H.eval(seed);
  for (auto& e : pt) e = embed(e, target);
  return pt;
}

Fraction density_check(const HsgSpec& H, const MPoly& f, unsigned workers) {
  if (f.is_zero()) throw PreconditionError("density_check: zero polynomial");
  if (f.degree() > static_cast<int>(H.D)) throw PreconditionError("density_check: degree exceeds the HSG degree");
  if (f.nvars() != H.n) throw PreconditionError("density_check: arity mismatch");
  if (f.depends_on(Var::y()) || f.depends_on(Var::t())) {
    throw PreconditionError("density_check: polynomial must involve x-variables only");
  }
  if (!is_subfield(*H.field, f.ctx())) throw PreconditionError("density_check: polynomial field does not extend HSG field");
  const std::uint64_t total = H.seed_count();
  if (total > kSeedEnumerationBudget) throw BudgetError("density_check: seed space exceeds the enumeration budget");
  workers = std::max(1u, workers);
  std::vector<std::uint64_t> zeros(workers, 0);
  auto run = [&](unsigned w) {
    std::vector<FieldElem> point(H.n + 1, f.ctx().zero());
    for (std::uint64_t s = w; s < total; s += workers) {
      auto h = hsg_eval(H, s, f.ctx());
      std::copy(h.begin(), h.end(), point.begin());
      if (f.eval(point).is_zero()) ++zeros[w];
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  std::uint64_t z = 0;
  for (auto c : zeros) z += c;
  return Fraction(static_cast<std::int64_t>(z), static_cast<std::int64_t>(total));
}

Fraction default_delta(unsigned d, Fraction c0, std::uint64_t q) {
  return c0 * Fraction(2 * static_cast<std::int64_t>(d) - 1, static_cast<std::int64_t>(q));
}

}  // namespace polyprg
