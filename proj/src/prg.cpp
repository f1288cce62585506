#include "polyprg/prg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <thread>

#include "polyprg/error.hpp"
#include "polyprg/hyph.hpp"

namespace polyprg {

namespace {

template <class Fn>
void run_workers(unsigned workers, Fn fn) {
  if (workers <= 1) {
    fn(0u);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(fn, w);
  for (auto& t : pool) t.join();
}

/// Term list with per-coordinate exponents for the hot evaluation loops.
class FlatPoly {
 public:
  explicit FlatPoly(const MPoly& f) : ctx_(&f.ctx()), arity_(f.nvars() + 1) {
    if (f.depends_on(Var::t())) throw PreconditionError("evaluation: f may not contain t");
    for (const auto& t : f.terms()) {
      Entry e{t.coeff, {}};
      for (unsigned i = 0; i < f.nvars(); ++i) e.exp[i] = static_cast<std::uint8_t>(t.mono.exp(Var::x(i + 1)));
      e.exp[f.nvars()] = static_cast<std::uint8_t>(t.mono.exp(Var::y()));
      for (unsigned i = 0; i < arity_; ++i) max_exp_ = std::max<unsigned>(max_exp_, e.exp[i]);
      terms_.push_back(e);
    }
  }

  unsigned arity() const { return arity_; }

  std::uint32_t eval(const std::uint32_t* point) const {
    std::array<std::array<std::uint32_t, 64>, kMaxXVars + 1> pw;
    const unsigned top = std::min(max_exp_, 63u);
    for (unsigned i = 0; i < arity_; ++i) {
      pw[i][0] = 1;
      for (unsigned e = 1; e <= top; ++e) pw[i][e] = ctx_->mul(pw[i][e - 1], point[i]);
    }
    std::uint32_t acc = 0;
    for (const auto& t : terms_) {
      std::uint32_t m = t.coeff;
      for (unsigned i = 0; i < arity_ && m != 0; ++i)
        if (t.exp[i]) m = ctx_->mul(m, pw[i][t.exp[i]]);
      acc = ctx_->add(acc, m);
    }
    return acc;
  }

 private:
  struct Entry {
    std::uint32_t coeff;
    std::array<std::uint8_t, kMaxXVars + 1> exp;
  };
  const FieldCtx* ctx_;
  unsigned arity_;
  unsigned max_exp_ = 0;
  std::vector<Entry> terms_;
};

void require_same_field(const MPoly& f, const PrgSpec& G) {
  if (f.field() != G.field) throw PreconditionError("prg: f must be over the generator's field");
  if (f.nvars() != G.n) throw PreconditionError("prg: f must have n x-variables");
  if (f.depends_on(Var::t())) throw PreconditionError("prg: f may not contain t");
}

/// All H outputs as index rows.
std::vector<std::uint32_t> hsg_table(const HsgSpec& H) {
  const std::uint64_t m = H.seed_count();
  if (m * H.n > kExactEnumerationBudget) throw BudgetError("prg: HSG seed space too large to tabulate");
  std::vector<std::uint32_t> out(m * H.n);
  for (std::uint64_t s = 0; s < m; ++s) {
    const auto p = H.eval(s);
    for (unsigned i = 0; i < H.n; ++i) out[s * H.n + i] = p[i].index();
  }
  return out;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned e, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > limit / base) return limit + 1;
    r *= base;
  }
  return r;
}

/// Uniform integer in [0, bound) by multiply-shift with rejection.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const unsigned __int128 range = bound;
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * range;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng()) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::mt19937_64 stream(std::uint64_t rng_seed, std::uint64_t key) {
  std::seed_seq seq{static_cast<std::uint32_t>(rng_seed), static_cast<std::uint32_t>(rng_seed >> 32),
                    static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  return std::mt19937_64(seq);
}

double distance_double(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s / 2;
}

std::vector<double> normalize(const EmpiricalDist& d) {
  std::vector<double> out(d.counts.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<double>(d.counts[i]) / static_cast<double>(d.total);
  return out;
}

/// 99th percentile of dist(resample, observed) over Poisson resamples.
double bootstrap_radius(const EmpiricalDist& d, std::mt19937_64 rng) {
  const auto observed = normalize(d);
  std::vector<double> dists;
  std::vector<double> star(observed.size());
  for (unsigned b = 0; b < kBootstrapReplicates; ++b) {
    double total = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
      double c = 0;
      if (d.counts[i] > 0) c = static_cast<double>(std::poisson_distribution<std::uint64_t>(
                                 static_cast<double>(d.counts[i]))(rng));
      star[i] = c;
      total += c;
    }
    if (total == 0) continue;
    for (auto& v : star) v /= total;
    dists.push_back(distance_double(star, observed));
  }
  if (dists.empty()) return 1.0;
  std::sort(dists.begin(), dists.end());
  const std::size_t idx = (dists.size() * 99 + 99) / 100 - 1;
  return dists[idx];
}

// ---- decomposability ----

/// F monicized by a shear: G = c^-1 s_a(F), monic in y of degree d.
struct Monic {
  MPoly G;
  FieldElem c;
  int d = 0;
};

Monic monic_form(const MPoly& F) {
  if (F.nvars() != 1) throw PreconditionError("is_decomposable_biv: F must be bivariate");
  if (F.depends_on(Var::t())) throw PreconditionError("is_decomposable_biv: F may not contain t");
  if (F.is_constant()) throw PreconditionError("is_decomposable_biv: F must be non-constant");
  const int d = F.degree();
  const std::uint32_t ch = F.ctx().p();
  if (d >= 2 && ch <= static_cast<std::uint32_t>(2 * d))
    throw PreconditionError("is_decomposable_biv: characteristic must exceed 2 deg F");
  const MPoly B = top_coeff_sum_B(F);
  const FieldCtx& K = F.ctx();
  for (std::uint32_t i = 0; i < K.size(); ++i) {
    const std::array<FieldElem, 1> a{K.elem(i)};
    const std::array<FieldElem, 2> pt{K.elem(i), K.zero()};
    const FieldElem c = B.eval(pt);
    if (c.is_zero()) continue;
    return {shear(F, a) * c.inv(), c, d};
  }
  throw BudgetError("is_decomposable_biv: no shear over the base field makes F monic");
}

/// Absolute irreducibility of a monic fiber; nullopt when no separable shift
/// over the base field has a splitting field within budget.
std::optional<bool> monic_fiber_irreducible(const MPoly& G, int d, unsigned k_max) {
  if (d == 1) return true;
  const FieldCtx& K = G.ctx();
  const MPoly Gt = swap_vars(G, Var::x(1), Var::t());
  const MPoly disc = resultant_y(Gt, partial(Gt, Var::y()));
  // A repeated factor makes the fiber reducible.
  if (disc.is_zero()) return false;

  const MPoly x = MPoly::variable(G.field(), 1, Var::x(1));
  const MPoly y = MPoly::variable(G.field(), 1, Var::y());
  auto shifted = [&](std::uint32_t e) {
    const std::array<MPoly, 2> images{x + MPoly::constant(G.field(), 1, K.elem(e)), y};
    return compose(G, images);
  };
  const std::size_t sigma = 2 * static_cast<std::size_t>(d);
  // Prefer a shift whose fiber splits over the base field.
  std::vector<std::uint32_t> separable;
  std::vector<FieldElem> roots;
  for (std::uint32_t i = 0; i < K.size(); ++i) {
    const std::array<FieldElem, 3> pt{K.zero(), K.zero(), K.elem(i)};
    if (disc.eval(pt).is_zero()) continue;
    separable.push_back(i);
    const MPoly g0 = assign(G, Var::x(1), K.elem(i));
    roots.clear();
    for (std::uint32_t r = 0; r < K.size(); ++r) {
      const std::array<FieldElem, 2> py{K.zero(), K.elem(r)};
      if (g0.eval(py).is_zero()) roots.push_back(K.elem(r));
    }
    if (static_cast<int>(roots.size()) == d) return recombine_with_roots(shifted(i), roots, sigma).sets.size() == 1;
  }
  for (std::uint32_t e : separable) {
    try {
      return recombine_factors(shifted(e), sigma, k_max).sets.size() == 1;
    } catch (const BudgetError&) {
    }
  }
  return std::nullopt;
}

MPoly fiber(const Monic& m, FieldElem lambda) {
  const FieldElem mu = embed(lambda, m.G.ctx()) / m.c;
  return m.G - MPoly::constant(m.G.field(), 1, mu);
}

}  // namespace

PrgSpec make_prg(const HsgSpec& H) {
  if (!H.field) throw PreconditionError("make_prg: HSG has no field");
  return {H, H.field, H.n};
}

std::vector<FieldElem> prg_eval(const PrgSpec& G, std::uint64_t r, std::uint64_t s, FieldElem u, FieldElem v) {
  const std::uint64_t m = G.H.seed_count();
  if (r >= m || s >= m) throw PreconditionError("prg_eval: seed outside T");
  const FieldCtx* K = G.field.get();
  if (u.ctx() != K || v.ctx() != K) throw PreconditionError("prg_eval: u, v must lie in the generator's field");
  const auto a = G.H.eval(r);
  const auto b = G.H.eval(s);
  std::vector<FieldElem> out;
  for (unsigned i = 0; i < G.n; ++i) out.push_back(b[i] * u + a[i] * v);
  out.push_back(v);
  return out;
}

Fraction statistical_distance(const EmpiricalDist& a, const EmpiricalDist& b) {
  if (a.counts.size() != b.counts.size()) throw PreconditionError("statistical_distance: support mismatch");
  if (a.total == 0 || b.total == 0) throw PreconditionError("statistical_distance: empty distribution");
  __int128 num = 0;
  for (std::size_t i = 0; i < a.counts.size(); ++i) {
    const __int128 x = static_cast<__int128>(a.counts[i]) * b.total - static_cast<__int128>(b.counts[i]) * a.total;
    num += x < 0 ? -x : x;
  }
  return Fraction::from_wide(num, static_cast<__int128>(2) * a.total * b.total);
}

EmpiricalDist uniform_distribution(const MPoly& f, unsigned workers) {
  if (f.depends_on(Var::t())) throw PreconditionError("uniform_distribution: f may not contain t");
  const std::uint64_t q = f.ctx().size();
  const unsigned arity = f.nvars() + 1;
  const std::uint64_t total = checked_pow(q, arity, kExactEnumerationBudget);
  if (total > kExactEnumerationBudget) throw BudgetError("uniform_distribution: q^(n+1) exceeds the enumeration budget");
  const FlatPoly flat(f);
  workers = std::max(1u, workers);
  // Shard on the last coordinate.
  std::vector<std::vector<std::uint64_t>> partial_counts(workers, std::vector<std::uint64_t>(q, 0));
  const std::uint64_t inner = total / q;
  run_workers(workers, [&](unsigned w) {
    auto& counts = partial_counts[w];
    std::vector<std::uint32_t> pt(arity, 0);
    for (std::uint64_t last = w; last < q; last += workers) {
      pt[arity - 1] = static_cast<std::uint32_t>(last);
      for (std::uint64_t idx = 0; idx < inner; ++idx) {
        std::uint64_t r = idx;
        for (unsigned i = 0; i + 1 < arity; ++i, r /= q) pt[i] = static_cast<std::uint32_t>(r % q);
        ++counts[flat.eval(pt.data())];
      }
    }
  });
  EmpiricalDist out{std::vector<std::uint64_t>(q, 0), total};
  for (const auto& c : partial_counts)
    for (std::size_t i = 0; i < q; ++i) out.counts[i] += c[i];
  return out;
}

EmpiricalDist generator_distribution(const MPoly& f, const PrgSpec& G, unsigned workers) {
  require_same_field(f, G);
  const std::uint64_t q = G.field->size();
  const std::uint64_t m = G.H.seed_count();
  const std::uint64_t planes = m * m;
  if (m > kExactEnumerationBudget || planes > kExactEnumerationBudget / (q * q))
    throw BudgetError("generator_distribution: seed space exceeds the enumeration budget");
  const auto table = hsg_table(G.H);
  const FieldCtx& K = *G.field;
  const unsigned n = G.n;
  workers = std::max(1u, workers);
  std::vector<std::vector<std::uint64_t>> partial_counts(workers, std::vector<std::uint64_t>(q, 0));
  run_workers(workers, [&](unsigned w) {
    auto& counts = partial_counts[w];
    std::vector<FieldElem> a(n), b(n);
    const int d = std::max(f.degree(), 0);
    // dense[j][k]: coefficient of x^j y^k in the restriction.
    std::vector<std::uint32_t> dense((d + 1) * (d + 1));
    std::vector<std::uint32_t> yc(d + 1);
    for (std::uint64_t plane = w; plane < planes; plane += workers) {
      const std::uint64_t r = plane / m, s = plane % m;
      for (unsigned i = 0; i < n; ++i) {
        a[i] = K.elem(table[r * n + i]);
        b[i] = K.elem(table[s * n + i]);
      }
      const MPoly F = plane_restrict(f, a, b);
      std::fill(dense.begin(), dense.end(), 0);
      for (const auto& t : F.terms()) dense[t.mono.exp(Var::x(1)) * (d + 1) + t.mono.exp(Var::y())] = t.coeff;
      for (std::uint32_t u = 0; u < q; ++u) {
        for (int k = 0; k <= d; ++k) {
          std::uint32_t acc = 0;
          for (int j = d; j >= 0; --j) acc = K.add(K.mul(acc, u), dense[j * (d + 1) + k]);
          yc[k] = acc;
        }
        for (std::uint32_t v = 0; v < q; ++v) {
          std::uint32_t acc = 0;
          for (int k = d; k >= 0; --k) acc = K.add(K.mul(acc, v), yc[k]);
          ++counts[acc];
        }
      }
    }
  });
  EmpiricalDist out{std::vector<std::uint64_t>(q, 0), planes * q * q};
  for (const auto& c : partial_counts)
    for (std::size_t i = 0; i < q; ++i) out.counts[i] += c[i];
  return out;
}

Fraction dist_exact(const MPoly& f, const PrgSpec& G, unsigned workers) {
  require_same_field(f, G);
  return statistical_distance(uniform_distribution(f, workers), generator_distribution(f, G, workers));
}

McEstimate dist_mc(const MPoly& f, const PrgSpec& G, std::uint64_t samples, std::uint64_t rng_seed,
                   unsigned workers) {
  require_same_field(f, G);
  const std::uint64_t q = G.field->size();
  if (samples < 10 * q) throw PreconditionError("dist_mc: need at least 10 q samples");
  const unsigned n = G.n;
  const std::uint64_t m = G.H.seed_count();
  const auto table = hsg_table(G.H);
  const FlatPoly flat(f);
  const FieldCtx& K = *G.field;
  const std::uint64_t chunks = (samples + kMcChunk - 1) / kMcChunk;
  const bool uniform_exact = checked_pow(q, n + 1, kExactEnumerationBudget) <= kExactEnumerationBudget;
  workers = std::max(1u, workers);

  std::vector<std::vector<std::uint64_t>> gen_counts(workers, std::vector<std::uint64_t>(q, 0));
  std::vector<std::vector<std::uint64_t>> uni_counts(workers, std::vector<std::uint64_t>(q, 0));
  run_workers(workers, [&](unsigned w) {
    std::vector<std::uint32_t> pt(n + 1);
    for (std::uint64_t c = w; c < chunks; c += workers) {
      const std::uint64_t len = std::min(kMcChunk, samples - c * kMcChunk);
      auto rng = stream(rng_seed, 2 * c);
      for (std::uint64_t i = 0; i < len; ++i) {
        const std::uint64_t r = bounded(rng, m), s = bounded(rng, m);
        const auto u = static_cast<std::uint32_t>(bounded(rng, q));
        const auto v = static_cast<std::uint32_t>(bounded(rng, q));
        for (unsigned j = 0; j < n; ++j) pt[j] = K.add(K.mul(table[s * n + j], u), K.mul(table[r * n + j], v));
        pt[n] = v;
        ++gen_counts[w][flat.eval(pt.data())];
      }
      if (uniform_exact) continue;
      auto urng = stream(rng_seed, 2 * c + 1);
      for (std::uint64_t i = 0; i < len; ++i) {
        for (unsigned j = 0; j <= n; ++j) pt[j] = static_cast<std::uint32_t>(bounded(urng, q));
        ++uni_counts[w][flat.eval(pt.data())];
      }
    }
  });
  EmpiricalDist gen{std::vector<std::uint64_t>(q, 0), samples};
  for (const auto& c : gen_counts)
    for (std::size_t i = 0; i < q; ++i) gen.counts[i] += c[i];
  EmpiricalDist uni;
  if (uniform_exact) {
    uni = uniform_distribution(f, workers);
  } else {
    uni = {std::vector<std::uint64_t>(q, 0), samples};
    for (const auto& c : uni_counts)
      for (std::size_t i = 0; i < q; ++i) uni.counts[i] += c[i];
  }
  McEstimate out;
  out.samples = samples;
  out.uniform_exact = uniform_exact;
  out.distance = distance_double(normalize(gen), normalize(uni));
  out.half_width = bootstrap_radius(gen, stream(rng_seed, ~std::uint64_t{0}));
  if (!uniform_exact) out.half_width += bootstrap_radius(uni, stream(rng_seed, ~std::uint64_t{1}));
  return out;
}

std::string to_string(Decomp d) {
  switch (d) {
    case Decomp::Decomposable:
      return "decomposable";
    case Decomp::Indecomposable:
      return "indecomposable";
    case Decomp::Unknown:
      return "unknown";
  }
  return "unknown";
}

bool fiber_is_irreducible(const MPoly& F, FieldElem lambda, unsigned k_max) {
  const Monic m = monic_form(F);
  const auto r = monic_fiber_irreducible(fiber(m, lambda), m.d, k_max);
  if (!r) throw BudgetError("fiber_is_irreducible: no separable shift over the base field");
  return *r;
}

DecompResult is_decomposable_biv(const MPoly& F, unsigned k_max) {
  const Monic m = monic_form(F);
  DecompResult out;
  const FieldCtx& K = F.ctx();
  if (m.d == 1) {
    out.verdict = Decomp::Indecomposable;
    out.witness = K.zero();
    return out;
  }
  auto scan = [&](const Monic& mm, const FieldCtx& L, auto&& skip) -> bool {
    for (std::uint32_t i = 0; i < L.size(); ++i) {
      const FieldElem lambda = L.elem(i);
      if (skip(lambda)) continue;
      ++out.fibers_tested;
      const auto r = monic_fiber_irreducible(fiber(mm, lambda), mm.d, k_max);
      if (!r) continue;
      if (*r) {
        out.verdict = Decomp::Indecomposable;
        out.witness = lambda;
        return true;
      }
      if (++out.reducible_fibers > static_cast<unsigned>(mm.d - 1)) {
        out.verdict = Decomp::Decomposable;
        return true;
      }
    }
    return false;
  };
  if (scan(m, K, [](FieldElem) { return false; })) return out;
  // Fibers over proper extensions, skipping base-field values.
  for (unsigned j = 2; j <= k_max; ++j) {
    const std::uint64_t size = checked_pow(K.p(), K.k() * j, kFieldSizeBudget);
    if (size > kFieldSizeBudget) break;
    const Field L = mk_extension(K.p(), K.k() * j);
    std::vector<bool> from_base(L->size(), false);
    for (std::uint32_t i = 0; i < K.size(); ++i) from_base[embed(K.elem(i), *L).index()] = true;
    const Monic mL{change_field(m.G, L), embed(m.c, *L), m.d};
    if (scan(mL, *L, [&](FieldElem e) { return from_base[e.index()]; })) return out;
  }
  return out;
}

std::vector<std::pair<FieldElem, bool>> fiber_profile(const MPoly& F, unsigned count, unsigned k_max) {
  const Monic m = monic_form(F);
  const FieldCtx& K = F.ctx();
  std::vector<std::pair<FieldElem, bool>> out;
  for (std::uint32_t i = 0; i < K.size() && out.size() < count; ++i) {
    const auto r = monic_fiber_irreducible(fiber(m, K.elem(i)), m.d, k_max);
    if (r) out.emplace_back(K.elem(i), *r);
  }
  return out;
}

Fraction SurvivalReport::good_fraction() const {
  return planes == 0 ? Fraction(0) : Fraction(static_cast<std::int64_t>(good), static_cast<std::int64_t>(planes));
}

Fraction SurvivalReport::bad_fraction() const {
  return planes == 0 ? Fraction(0) : Fraction(static_cast<std::int64_t>(bad), static_cast<std::int64_t>(planes));
}

SurvivalReport restriction_survival(const MPoly& f, const PrgSpec& G, unsigned workers, unsigned k_max) {
  require_same_field(f, G);
  const std::uint64_t m = G.H.seed_count();
  if (m > (std::uint64_t{1} << 24) || m * m > kExactEnumerationBudget)
    throw BudgetError("restriction_survival: |T|^2 exceeds the enumeration budget");
  const std::uint64_t planes = m * m;
  const auto table = hsg_table(G.H);
  const FieldCtx& K = *G.field;
  const unsigned n = G.n;

  enum Outcome : std::uint8_t { kGood, kBad, kUnknown };
  auto classify = [&](std::uint64_t plane) {
    const std::uint64_t r = plane / m, s = plane % m;
    std::vector<FieldElem> a(n), b(n);
    for (unsigned i = 0; i < n; ++i) {
      a[i] = K.elem(table[r * n + i]);
      b[i] = K.elem(table[s * n + i]);
    }
    const MPoly F = plane_restrict(f, a, b);
    if (F.is_constant()) return kUnknown;
    Decomp verdict = Decomp::Unknown;
    try {
      verdict = is_decomposable_biv(F, k_max).verdict;
    } catch (const BudgetError&) {
    } catch (const ConsistencyError&) {
    }
    switch (verdict) {
      case Decomp::Indecomposable:
        return kGood;
      case Decomp::Decomposable:
        return kBad;
      case Decomp::Unknown:
        return kUnknown;
    }
    return kUnknown;
  };

  // Probe spread-out planes first so decomposable inputs fail fast.
  {
    const std::uint64_t probes = std::min<std::uint64_t>(planes, 32);
    bool any_good = false, any_unknown = false;
    std::mt19937_64 rng(planes);
    for (std::uint64_t i = 0; i < probes && !any_good; ++i) {
      const auto o = classify(bounded(rng, planes));
      any_good = o == kGood;
      any_unknown = any_unknown || o == kUnknown;
    }
    if (!any_good && !any_unknown)
      throw PreconditionError("restriction_survival: every probed restriction is decomposable; f is decomposable");
  }

  workers = std::max(1u, workers);
  std::vector<std::uint8_t> outcome(planes, kUnknown);
  run_workers(workers, [&](unsigned w) {
    for (std::uint64_t p = w; p < planes; p += workers) outcome[p] = classify(p);
  });
  SurvivalReport out;
  out.planes = planes;
  for (std::uint64_t p = 0; p < planes; ++p) {
    const PlaneRef ref{p / m, p % m};
    switch (outcome[p]) {
      case kGood:
        ++out.good;
        break;
      case kBad:
        ++out.bad;
        out.bad_planes.push_back(ref);
        break;
      default:
        ++out.unknown;
        out.unknown_planes.push_back(ref);
    }
  }
  if (out.good == 0 && out.bad > 0)
    throw PreconditionError("restriction_survival: no restriction is indecomposable; f is decomposable");
  return out;
}

}  // namespace polyprg
