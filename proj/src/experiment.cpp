#include "polyprg/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "polyprg/error.hpp"
#include "polyprg/hyph.hpp"
#include "polyprg/lecerf.hpp"
#include "polyprg/parse.hpp"
#include "polyprg/prg.hpp"

namespace polyprg {

using nlohmann::json;

namespace {

json error_json(const std::exception& e) {
  json j{{"message", e.what()}};
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    j["kind"] = "ParseError";
    j["offset"] = p->offset();
  } else if (dynamic_cast<const PreconditionError*>(&e)) {
    j["kind"] = "PreconditionError";
  } else if (dynamic_cast<const BudgetError*>(&e)) {
    j["kind"] = "BudgetError";
  } else if (dynamic_cast<const ConsistencyError*>(&e)) {
    j["kind"] = "ConsistencyError";
  } else {
    j["kind"] = "Error";
  }
  return j;
}

json elems_json(std::span<const FieldElem> v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(e.to_string());
  return out;
}

json matrix_json(const Matrix<FieldElem>& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(elems_json(m.row(i)));
  return out;
}

std::string field_of(const ExperimentConfig& c, const std::string& fallback) { return c.field.value_or(fallback); }

Fraction c0_of(const ExperimentConfig& c, Fraction fallback = Fraction(1)) { return c.c0.value_or(fallback); }

std::vector<CorpusEntry> load_entries(const ExperimentConfig& c) {
  std::vector<CorpusEntry> all;
  if (c.corpus == "builtin") {
    all = builtin_corpus();
  } else if (c.corpus == "random") {
    all = random_corpus(field_of(c, "23"), c.n.value_or(2), c.degree.value_or(3), c.random_count, c.rng_seed);
  } else {
    all = load_corpus(c.corpus);
  }
  std::vector<CorpusEntry> out;
  for (auto& e : all)
    if (c.filter.empty() || e.name.find(c.filter) != std::string::npos) out.push_back(std::move(e));
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

MPoly poly_of(const ExperimentConfig& c, const std::string& default_field) {
  if (!c.poly_file) throw PreconditionError("--poly FILE is required");
  return parse_poly(read_text(*c.poly_file), parse_field(field_of(c, default_field)), c.n);
}

std::vector<FieldElem> parse_point(const std::string& text, const FieldCtx& K, unsigned n) {
  std::vector<FieldElem> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_poly(item, K.size() ? parse_field(K.descriptor()) : nullptr, 0).constant_term());
  if (out.size() != n) throw PreconditionError("--point needs " + std::to_string(n) + " coordinates");
  return out;
}

/// All of F_q^n when small, else a seeded sample of 256 points.
std::vector<std::vector<FieldElem>> scan_points(const FieldCtx& K, unsigned n, std::uint64_t rng_seed) {
  std::uint64_t total = 1;
  for (unsigned i = 0; i < n && total <= 4096; ++i) total *= K.size();
  std::vector<std::vector<FieldElem>> out;
  if (total <= 4096) {
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::vector<FieldElem> a;
      std::uint64_t r = idx;
      for (unsigned i = 0; i < n; ++i, r /= K.size()) a.push_back(K.elem(static_cast<std::uint32_t>(r % K.size())));
      out.push_back(std::move(a));
    }
    return out;
  }
  std::mt19937_64 rng(rng_seed);
  for (int s = 0; s < 256; ++s) {
    std::vector<FieldElem> a;
    for (unsigned i = 0; i < n; ++i) a.push_back(K.elem(static_cast<std::uint32_t>(rng() % K.size())));
    out.push_back(std::move(a));
  }
  return out;
}

bool char_ok(const FieldCtx& K, int d) { return static_cast<std::int64_t>(K.p()) >= d * (d - 1) + 1; }

/// Runs `body` on each entry; exceptions become error entries.
struct Collector {
  json instances = json::array();
  json skipped = json::array();
  bool ok = true;

  void skip(const CorpusEntry& e, const std::string& reason) { skipped.push_back({{"name", e.name}, {"reason", reason}}); }

  void guard(const std::string& name, const std::function<json()>& body) {
    json inst;
    try {
      inst = body();
      inst["name"] = name;
    } catch (const std::exception& ex) {
      inst = {{"name", name}, {"ok", false}, {"error", error_json(ex)}};
    }
    if (!inst.value("ok", false)) ok = false;
    instances.push_back(std::move(inst));
  }
};

json grid_json(const HsgSpec& H) {
  return {{"kind", to_string(H.kind)}, {"n", H.n}, {"D", H.D}, {"delta", H.delta.to_string()},
          {"support_size", H.support.size()}, {"seed_count", H.seed_count()}};
}

// ---- suites ----

json lecerf_instance(const MPoly& f, const ExperimentConfig& c) {
  const int d = f.degree();
  const unsigned sigma = c.sigma.value_or(2 * d);
  const WorkingField w = prepare(f);
  std::size_t agree = 0, total = 0;
  json disagree = json::array();
  for (const auto& a : scan_points(f.ctx(), f.nvars(), c.rng_seed)) {
    const LecerfVerdict v = verify_lecerf(w, a, sigma);
    ++total;
    if (v.agree) {
      ++agree;
    } else if (disagree.size() < 16) {
      disagree.push_back(elems_json(a));
    }
  }
  return {{"d", d}, {"n", f.nvars()}, {"sigma", sigma}, {"working_field", w.field->descriptor()},
          {"points", total}, {"agree", agree}, {"disagree_points", disagree}, {"ok", agree == total}};
}

void suite_lecerf(const ExperimentConfig& c, Collector& out) {
  for (const auto& e : load_entries(c)) {
    const MPoly f = e.parse();
    const int d = f.degree();
    if (d < 1 || d > 4) { out.skip(e, "degree outside 1..4"); continue; }
    if (!char_ok(f.ctx(), d)) { out.skip(e, "characteristic below d(d-1)+1"); continue; }
    if (!check_H(f).pass()) { out.skip(e, "fails hypothesis (H)"); continue; }
    out.guard(e.name, [&] { return lecerf_instance(f, c); });
  }
}

void suite_degree_audit(const ExperimentConfig& c, Collector& out) {
  for (const auto& e : load_entries(c)) {
    const MPoly f = e.parse();
    const int d = f.degree();
    if (f.nvars() > 2 || d < 1 || d > 3) { out.skip(e, "needs n <= 2 and d <= 3"); continue; }
    if (!check_H(f).pass()) { out.skip(e, "fails hypothesis (H)"); continue; }
    out.guard(e.name, [&] {
      const unsigned sigma = c.sigma.value_or(2 * d);
      const auto sys = build_symbolic_system(f, sigma);
      std::size_t entries = 0, violations = 0;
      int slack = 1 << 20;
      json bad = json::array();
      for (std::size_t r = 0; r < sys.rows.size(); ++r) {
        const RowLabel& lab = sys.rows[r];
        const int bound = static_cast<int>(lab.j) + (lab.block == Block::DX ? 1 : 0);
        for (std::size_t i = 0; i < sys.matrix.cols(); ++i) {
          ++entries;
          const int deg = sys.matrix(r, i).degree();
          if (deg > bound) {
            ++violations;
            if (bad.size() < 16) bad.push_back({{"row", to_string(lab)}, {"col", i}, {"degree", deg}, {"bound", bound}});
          } else if (deg >= 0) {
            slack = std::min(slack, bound - deg);
          }
        }
      }
      return json{{"d", d}, {"sigma", sigma}, {"rows", sys.rows.size()}, {"entries", entries},
                  {"violations", violations}, {"min_slack", slack}, {"violating", bad}, {"ok", violations == 0}};
    });
  }
}

json hensel_instance(const MPoly& F, unsigned sigma, const ExperimentConfig& c) {
  const LiftedRoots lr = hensel_roots(F, sigma);
  const SeriesPoly<FieldElem> P = to_series_poly(lr.F, sigma);
  bool residual = true;
  for (const auto& lam : lr.roots) residual = residual && P.eval_y(lam).is_zero();
  std::optional<SeriesPoly<FieldElem>> prod;
  for (const auto& lam : lr.roots) {
    const auto g = linear_factor(lam);
    prod = prod ? *prod * g : g;
  }
  bool product = prod && prod->degree_y() == P.degree_y();
  for (int k = 0; product && k <= P.degree_y(); ++k)
    for (std::size_t j = 0; j < sigma; ++j)
      if (!(prod->coeff(j, k) == P.coeff(j, k))) product = false;
  (void)c;
  return {{"sigma", sigma}, {"roots", lr.roots.size()}, {"working_field", lr.field->descriptor()},
          {"residuals_vanish", residual}, {"product_matches", product}, {"ok", residual && product}};
}

void suite_hensel(const ExperimentConfig& c, Collector& out) {
  for (const auto& e : load_entries(c)) {
    const MPoly f = e.parse();
    if (!check_H(f).pass() || f.degree() < 1) { out.skip(e, "fails hypothesis (H)"); continue; }
    MPoly F = f;
    std::string label = e.name;
    if (f.nvars() != 1) {
      std::vector<FieldElem> a;
      for (unsigned i = 0; i < f.nvars(); ++i) a.push_back(f.ctx().from_int(i + 1));
      F = line_restrict(f, a);
      label += "@line";
    }
    const unsigned d = F.degree();
    std::vector<unsigned> sigmas{4, 2 * d};
    if (c.sigma) sigmas = {*c.sigma};
    if (sigmas.size() == 2 && sigmas[0] == sigmas[1]) sigmas.pop_back();
    for (unsigned s : sigmas) out.guard(label + "/sigma=" + std::to_string(s), [&] { return hensel_instance(F, s, c); });
  }
}

void suite_hyph_profile(const ExperimentConfig& c, Collector& out) {
  for (const auto& e : load_entries(c)) {
    const MPoly f = e.parse();
    const int d = f.degree();
    if (d < 1 || d > 4) { out.skip(e, "degree outside 1..4"); continue; }
    if (!check_H(f).monic_ok) { out.skip(e, "not monic in y of full degree"); continue; }
    if (static_cast<int>(f.ctx().p()) <= d) { out.skip(e, "characteristic not above d"); continue; }
    out.guard(e.name, [&] {
      const FieldCtx& K = f.ctx();
      std::size_t checked = 0;
      json failures = json::array();
      const FieldElem dd = K.from_int(d).pow(d);
      for (std::uint32_t i = 1; i < K.size(); ++i) {
        const FieldElem cc = K.elem(i);
        const MPoly h = resultant_profile_t(f, cc);
        const FieldElem lead = h.coeff(Monomial::of(Var::t(), d - 1));
        ++checked;
        if (h.degree(Var::t()) != d - 1 || !(lead == cc.pow(d - 1) * dd)) {
          if (failures.size() < 16) failures.push_back({{"c", cc.to_string()}, {"h", to_string(h)}});
        }
      }
      return json{{"d", d}, {"c_checked", checked}, {"failures", failures}, {"ok", failures.empty()}};
    });
  }
}

json bertini_instance(const MPoly& f, const ExperimentConfig& c) {
  const int d = f.degree();
  require_char_for_degree(f.ctx(), d);
  const unsigned sigma = c.sigma.value_or(2 * d);
  const WorkingField w = prepare(f);
  const auto points = scan_points(f.ctx(), f.nvars(), c.rng_seed);
  std::vector<std::size_t> nullity;
  std::size_t factors = d;
  for (const auto& a : points) {
    const auto r = bertinian_classify(w, a, sigma, 1);
    nullity.push_back(r.nullity);
    factors = std::min(factors, r.nullity);
  }
  json bad = json::array();
  std::vector<const std::vector<FieldElem>*> bad_pts;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (nullity[i] != factors) {
      bad.push_back(elems_json(points[i]));
      bad_pts.push_back(&points[i]);
    }
  json j{{"d", d}, {"sigma", sigma}, {"points", points.size()}, {"abs_factors", factors}, {"bad", bad},
         {"bad_count", bad.size()}};
  bool ok = true;
  if (factors == 1) {
    const auto certs = bertinian_certificates(w, sigma);
    json cj = json::array();
    bool degrees_ok = true;
    for (const auto& cert : certs) {
      degrees_ok = degrees_ok && cert.Q.degree() <= 2 * d - 1;
      cj.push_back({{"subset", cert.subset}, {"row", to_string(cert.row)}, {"Q", to_string(cert.Q, 'z')},
                    {"degree", cert.Q.degree()}});
    }
    std::size_t covered = 0;
    for (const auto* a : bad_pts) {
      std::vector<FieldElem> pt;
      for (const auto& v : *a) pt.push_back(embed(v, *w.field));
      pt.push_back(w.field->zero());
      bool hit = false;
      for (const auto& cert : certs) hit = hit || cert.Q.eval(pt).is_zero();
      covered += hit;
    }
    j["certificates"] = cj;
    j["certificate_degrees_ok"] = degrees_ok;
    j["bad_points_covered"] = covered;
    ok = degrees_ok && covered == bad_pts.size();
  }
  j["ok"] = ok;
  return j;
}

void suite_bertini(const ExperimentConfig& c, Collector& out) {
  if (c.poly_file) {
    const MPoly f = poly_of(c, "7");
    out.guard(*c.poly_file, [&] { return bertini_instance(f, c); });
    return;
  }
  ExperimentConfig cc = c;
  if (cc.filter.empty()) cc.filter = "bertini-example-f7";
  for (const auto& e : load_entries(cc)) {
    const MPoly f = e.parse();
    if (!check_H(f).pass() || !char_ok(f.ctx(), f.degree())) { out.skip(e, "fails (H) or characteristic bound"); continue; }
    out.guard(e.name, [&] { return bertini_instance(f, c); });
  }
}

json exhaustive_density(const ExperimentConfig& c) {
  const Field F = parse_field(field_of(c, "7"));
  if (F->k() != 1 || F->size() > 255) throw PreconditionError("hsg-density suite: needs a prime field below 256");
  const unsigned n = c.n.value_or(2);
  const unsigned D = c.degree.value_or(3);
  const Fraction delta = c.delta.value_or(Fraction(1, 2));
  const HsgSpec H = make_hsg(c.hsg, n, D, delta, F);
  const std::uint32_t q = F->size();
  // Monomials in x_1..x_n of degree <= D.
  std::vector<Monomial> monos;
  std::function<void(unsigned, Monomial, unsigned)> rec = [&](unsigned slot, Monomial m, unsigned left) {
    if (slot == n + 1) {
      monos.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) rec(slot + 1, m * Monomial::of(Var::x(slot), e), left - e);
  };
  rec(1, Monomial{}, D);
  const std::size_t M = monos.size();
  double log_total = M * std::log2(static_cast<double>(q));
  if (log_total > 34) throw BudgetError("hsg-density suite: q^M exceeds 2^34");
  const std::size_t P = H.seed_count();
  std::vector<std::vector<std::uint8_t>> vals(M, std::vector<std::uint8_t>(P));
  for (std::size_t s = 0; s < P; ++s) {
    const auto pt = H.eval(s);
    std::vector<FieldElem> full(pt.begin(), pt.end());
    full.push_back(F->zero());
    for (std::size_t i = 0; i < M; ++i)
      vals[i][s] = static_cast<std::uint8_t>(MPoly::monomial(F, n, monos[i], F->one()).eval(full).index());
  }
  // Nonzero polynomials up to scaling: the highest nonzero coefficient is 1.
  std::vector<std::uint64_t> hist(P + 1, 0);
  std::uint64_t count = 0;
  std::vector<std::uint8_t> cur(P);
  auto add_row = [&](std::size_t i) {
    for (std::size_t s = 0; s < P; ++s) {
      const unsigned v = cur[s] + vals[i][s];
      cur[s] = static_cast<std::uint8_t>(v >= q ? v - q : v);
    }
  };
  auto zeros = [&] {
    std::size_t z = 0;
    for (std::size_t s = 0; s < P; ++s) z += cur[s] == 0;
    return z;
  };
  for (std::size_t L = 0; L < M; ++L) {
    cur = vals[L];
    std::vector<std::uint32_t> digit(L, 0);
    while (true) {
      ++hist[zeros()];
      ++count;
      std::size_t i = 0;
      while (i < L) {
        add_row(i);
        if (++digit[i] < q) break;
        digit[i] = 0;
        ++i;
      }
      if (i == L) break;
    }
  }
  std::size_t max_zeros = 0;
  for (std::size_t z = 0; z <= P; ++z)
    if (hist[z]) max_zeros = z;
  const Fraction worst(static_cast<std::int64_t>(max_zeros), static_cast<std::int64_t>(P));
  const Fraction dm(D, static_cast<std::int64_t>(H.support.size()));
  // Spot-check the fast counts against density_check.
  std::mt19937_64 rng(c.rng_seed);
  std::size_t spot_mismatch = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Term> terms;
    std::fill(cur.begin(), cur.end(), 0);
    for (std::size_t i = 0; i < M; ++i) {
      const std::uint32_t coef = static_cast<std::uint32_t>(rng() % q);
      if (coef) terms.push_back({monos[i], coef});
      for (std::uint32_t t = 0; t < coef; ++t) add_row(i);
    }
    const MPoly f = MPoly::from_terms(F, n, terms);
    if (f.is_zero()) continue;
    if (!(density_check(H, f, c.workers) == Fraction(static_cast<std::int64_t>(zeros()), static_cast<std::int64_t>(P))))
      ++spot_mismatch;
  }
  json histogram = json::object();
  for (std::size_t z = 0; z <= P; ++z)
    if (hist[z]) histogram[std::to_string(z)] = hist[z];
  const bool ok = worst <= delta && worst <= dm && spot_mismatch == 0;
  return {{"hsg", grid_json(H)}, {"field", F->descriptor()}, {"polynomials_up_to_scaling", count},
          {"max_vanishing_fraction", worst.to_string()}, {"delta", delta.to_string()}, {"D_over_m", dm.to_string()},
          {"zero_count_histogram", histogram}, {"spot_check_mismatches", spot_mismatch}, {"ok", ok}};
}

json survival_instance(const MPoly& f, const ExperimentConfig& c, bool prime_bound) {
  const int d = f.degree();
  const FieldCtx& K = f.ctx();
  require_char_for_degree(K, d);
  const Fraction c0 = c0_of(c);
  const Fraction delta = c.delta.value_or(default_delta(d, c0, K.size()));
  const PrgSpec G = make_prg(make_hsg(c.hsg, f.nvars(), 2 * d - 1, delta, f.field()));
  const SurvivalReport r = restriction_survival(f, G, c.workers);
  const Fraction bound = prime_bound ? Fraction(2) * delta : Fraction(std::int64_t{1} << (d - 1)) * delta;
  const Fraction unknown_frac(static_cast<std::int64_t>(r.unknown), static_cast<std::int64_t>(r.planes));
  json bad = json::array(), unknown = json::array();
  for (const auto& p : r.bad_planes) bad.push_back({p.r, p.s});
  for (const auto& p : r.unknown_planes) unknown.push_back({p.r, p.s});
  const bool ok = r.bad_fraction() <= bound && unknown_frac < Fraction(1, 20);
  return {{"field", K.descriptor()}, {"d", d}, {"n", f.nvars()}, {"c0", c0.to_string()}, {"delta", delta.to_string()},
          {"hsg", grid_json(G.H)}, {"planes", r.planes}, {"good", r.good}, {"bad", r.bad}, {"unknown", r.unknown},
          {"bad_fraction", r.bad_fraction().to_string()}, {"bad_fraction_value", r.bad_fraction().to_double()},
          {"bound", bound.to_string()}, {"bound_value", bound.to_double()},
          {"unknown_fraction", unknown_frac.to_string()}, {"bad_planes", bad}, {"unknown_planes", unknown},
          {"ok", ok}};
}

void suite_reduction(const ExperimentConfig& c, Collector& out, bool prime_only) {
  const std::string field = field_of(c, "23");
  for (const auto& e : load_entries(c)) {
    if (e.field != field) { out.skip(e, "field differs from " + field); continue; }
    if (!e.decomposable.has_value() || *e.decomposable) { out.skip(e, "not known indecomposable"); continue; }
    const MPoly f = e.parse();
    const int d = f.degree();
    if (prime_only ? d != 3 : (d != 2 && d != 3)) { out.skip(e, prime_only ? "degree is not 3" : "degree outside 2..3"); continue; }
    if (f.nvars() > 2) { out.skip(e, "|T|^2 for n > 2 is outside the scan budget"); continue; }
    out.guard(e.name, [&] { return survival_instance(f, c, prime_only); });
  }
}

json distance_point(const MPoly& f, const ExperimentConfig& c, Fraction c0, bool exact) {
  const int d = f.degree();
  const FieldCtx& K = f.ctx();
  const Fraction delta = c.delta.value_or(default_delta(d, c0, K.size()));
  const PrgSpec G = make_prg(make_hsg(c.hsg, f.nvars(), 2 * d - 1, delta, f.field()));
  json j{{"field", K.descriptor()}, {"d", d}, {"n", f.nvars()}, {"c0", c0.to_string()},
         {"delta", delta.to_string()}, {"hsg", grid_json(G.H)}};
  if (exact) {
    const Fraction dist = dist_exact(f, G, c.workers);
    j["mode"] = "exact";
    j["distance_exact"] = dist.to_string();
    j["distance"] = dist.to_double();
    j["half_width"] = 0.0;
  } else {
    const McEstimate e = dist_mc(f, G, c.samples, c.rng_seed, c.workers);
    j["mode"] = "mc";
    j["distance"] = e.distance;
    j["half_width"] = e.half_width;
    j["samples"] = e.samples;
    j["uniform_exact"] = e.uniform_exact;
  }
  return j;
}

void suite_distance_scaling(const ExperimentConfig& c, Collector& out, json& aggregate) {
  std::vector<std::string> fields{"23", "47", "101", "211"};
  if (c.field) {
    fields.clear();
    std::stringstream ss(*c.field);
    std::string item;
    while (std::getline(ss, item, ',')) fields.push_back(item);
  }
  const std::string text = c.poly_file ? read_text(*c.poly_file) : "y^2 + x1*y + x1^2 + x1 + 1";
  // With C0 = 1 the grid covers all of F_q and G is uniform off one point.
  const Fraction c0 = c0_of(c, Fraction(6));
  std::vector<double> qs, ds;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const std::string name = "q=" + fields[i];
    out.guard(name, [&] {
      const MPoly f = parse_poly(text, parse_field(fields[i]), c.n);
      json j = distance_point(f, c, c0, i == 0 && c.mode != "mc");
      j["poly"] = to_string(f);
      qs.push_back(f.ctx().size());
      ds.push_back(j["distance"].get<double>());
      j["ok"] = true;
      return j;
    });
  }
  bool monotone = true;
  for (std::size_t i = 1; i < ds.size(); ++i) monotone = monotone && ds[i] <= ds[i - 1];
  const bool complete = ds.size() == fields.size() && ds.size() >= 2;
  double slope = 0;
  bool positive = true;
  for (double v : ds) positive = positive && v > 0;
  if (complete && positive) slope = loglog_slope(qs, ds);
  aggregate = {{"monotone_non_increasing", monotone}, {"loglog_slope", slope}, {"slope_threshold", -0.35},
               {"c0", c0.to_string()}};
  if (!(complete && positive && monotone && slope <= -0.35)) out.ok = false;
}

// ---- single commands ----

json cmd_hyph(const ExperimentConfig& c) {
  const MPoly f = poly_of(c, "23");
  const HReport h = check_H(f);
  json j{{"field", f.ctx().descriptor()}, {"poly", to_string(f)}, {"d", f.degree()}, {"n", f.nvars()},
         {"monic_ok", h.monic_ok}, {"sep_ok", h.sep_ok}, {"resultant", to_string(h.resultant)}, {"pass", h.pass()}};
  const int d = f.degree();
  const Fraction delta = c.delta.value_or(default_delta(d, c0_of(c), f.ctx().size()));
  const HsgSpec H = make_hsg(c.hsg, f.nvars(), c.degree.value_or(2 * d - 1), delta, f.field());
  const Monicization m = monicize(f, H);
  j["monicization"] = {{"hsg", grid_json(H)}, {"seed", m.seed}, {"a", elems_json(m.a)}, {"c", m.c.to_string()},
                       {"g", to_string(m.g)}, {"monic_ok", m.report.monic_ok}, {"sep_ok", m.report.sep_ok},
                       {"resultant", to_string(m.report.resultant)}};
  j["ok"] = true;
  return j;
}

json pattern_json(const FactorPattern& p) {
  json factors = json::array();
  for (const auto& f : p.factors) factors.push_back(to_string(f));
  return {{"working_field", p.field->descriptor()}, {"sets", p.sets}, {"factors", factors},
          {"sigma_used", p.sigma_used}};
}

json cmd_factor2(const ExperimentConfig& c) {
  const MPoly f = poly_of(c, "23");
  if (f.nvars() != 1) throw PreconditionError("factor2 needs a bivariate polynomial in x1, y");
  const FactorPattern p = recombine_factors(f, c.sigma.value_or(2 * f.degree()));
  json j = pattern_json(p);
  j["poly"] = to_string(f);
  j["ok"] = true;
  return j;
}

json cmd_lecerf(const ExperimentConfig& c) {
  const MPoly f = poly_of(c, "23");
  const int d = f.degree();
  if (!c.point) throw PreconditionError("--point a1,..,an is required");
  const auto a = parse_point(*c.point, f.ctx(), f.nvars());
  const unsigned sigma = c.sigma.value_or(2 * d);
  const LecerfVerdict v = verify_lecerf(f, a, sigma);
  return {{"poly", to_string(f)}, {"point", elems_json(a)}, {"sigma", sigma}, {"rows", v.rows}, {"cols", d},
          {"nullspace", matrix_json(v.nullspace_rref)}, {"indicator_span", matrix_json(v.indicator_rref)},
          {"pattern", pattern_json(v.pattern)}, {"agree", v.agree}, {"ok", v.agree}};
}

json cmd_hsg_density(const ExperimentConfig& c) {
  const MPoly f = poly_of(c, "23");
  const unsigned D = c.degree.value_or(std::max(f.degree(), 1));
  const Fraction delta = c.delta.value_or(Fraction(1, 2));
  const HsgSpec H = make_hsg(c.hsg, f.nvars(), D, delta, f.field());
  const Fraction frac = density_check(H, f, c.workers);
  return {{"poly", to_string(f)}, {"hsg", grid_json(H)}, {"vanishing_fraction", frac.to_string()},
          {"delta", delta.to_string()}, {"ok", frac <= delta}};
}

json cmd_prg_distance(const ExperimentConfig& c) {
  const MPoly f = poly_of(c, "23");
  if (c.mode != "exact" && c.mode != "mc") throw PreconditionError("--mode must be exact or mc");
  json j = distance_point(f, c, c0_of(c), c.mode == "exact");
  j["poly"] = to_string(f);
  j["ok"] = true;
  return j;
}

json cmd_plane_scan(const ExperimentConfig& c) {
  const MPoly f = poly_of(c, "23");
  json j = survival_instance(f, c, false);
  j["poly"] = to_string(f);
  return j;
}

}  // namespace

json to_json(const ExperimentConfig& c) {
  json j{{"command", c.command}, {"hsg", to_string(c.hsg)}, {"corpus", c.corpus}, {"filter", c.filter},
         {"random_count", c.random_count}, {"rng_seed", c.rng_seed}, {"mode", c.mode}, {"samples", c.samples},
         {"workers", c.workers}, {"timings", c.timings}};
  if (!c.suite.empty()) j["suite"] = c.suite;
  if (c.field) j["field"] = *c.field;
  if (c.n) j["n"] = *c.n;
  if (c.sigma) j["sigma"] = *c.sigma;
  if (c.degree) j["degree"] = *c.degree;
  if (c.c0) j["c0"] = c.c0->to_string();
  if (c.delta) j["delta"] = c.delta->to_string();
  if (c.poly_file) j["poly_file"] = *c.poly_file;
  if (c.point) j["point"] = *c.point;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  try {
    c.command = j.at("command").get<std::string>();
    c.suite = j.value("suite", "");
    c.hsg = parse_hsg_kind(j.value("hsg", "grid"));
    c.corpus = j.value("corpus", "builtin");
    c.filter = j.value("filter", "");
    c.random_count = j.value("random_count", 8u);
    c.rng_seed = j.value("rng_seed", std::uint64_t{1});
    c.mode = j.value("mode", "exact");
    c.samples = j.value("samples", std::uint64_t{10'000'000});
    c.workers = j.value("workers", 1u);
    c.timings = j.value("timings", false);
    if (j.contains("field")) c.field = j["field"].get<std::string>();
    if (j.contains("n")) c.n = j["n"].get<unsigned>();
    if (j.contains("sigma")) c.sigma = j["sigma"].get<unsigned>();
    if (j.contains("degree")) c.degree = j["degree"].get<unsigned>();
    if (j.contains("c0")) c.c0 = parse_fraction(j["c0"].get<std::string>());
    if (j.contains("delta")) c.delta = parse_fraction(j["delta"].get<std::string>());
    if (j.contains("poly_file")) c.poly_file = j["poly_file"].get<std::string>();
    if (j.contains("point")) c.point = j["point"].get<std::string>();
  } catch (const json::exception& ex) {
    throw ParseError(std::string("config: ") + ex.what(), 0);
  }
  return c;
}

std::vector<std::string> suite_names() {
  return {"lecerf-suite",     "degree-audit", "hensel",    "hyph-profile", "bertini-scan",
          "hsg-density",      "reduction",    "distance-scaling", "prime-degree"};
}

RunResult run(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  json report{{"config", to_json(config)}};
  Collector out;
  json aggregate = json::object();
  try {
    if (config.workers == 0) throw PreconditionError("--workers must be positive");
    const std::string& cmd = config.command;
    if (cmd == "suite") {
      const std::string& s = config.suite;
      if (s == "lecerf-suite") suite_lecerf(config, out);
      else if (s == "degree-audit") suite_degree_audit(config, out);
      else if (s == "hensel") suite_hensel(config, out);
      else if (s == "hyph-profile") suite_hyph_profile(config, out);
      else if (s == "bertini-scan") suite_bertini(config, out);
      else if (s == "hsg-density") out.guard("exhaustive", [&] { return exhaustive_density(config); });
      else if (s == "reduction") suite_reduction(config, out, false);
      else if (s == "prime-degree") suite_reduction(config, out, true);
      else if (s == "distance-scaling") suite_distance_scaling(config, out, aggregate);
      else throw PreconditionError("unknown suite '" + s + "'");
    } else {
      std::function<json(const ExperimentConfig&)> fn;
      if (cmd == "hyph") fn = cmd_hyph;
      else if (cmd == "factor2") fn = cmd_factor2;
      else if (cmd == "lecerf") fn = cmd_lecerf;
      else if (cmd == "bertini-scan") fn = [](const ExperimentConfig& c) { return bertini_instance(poly_of(c, "7"), c); };
      else if (cmd == "hsg-density") fn = cmd_hsg_density;
      else if (cmd == "prg-distance") fn = cmd_prg_distance;
      else if (cmd == "plane-scan") fn = cmd_plane_scan;
      else throw PreconditionError("unknown command '" + cmd + "'");
      out.guard(config.poly_file.value_or(cmd), [&] { return fn(config); });
    }
  } catch (const std::exception& ex) {
    report["error"] = error_json(ex);
    out.ok = false;
  }
  std::size_t passed = 0, errors = 0;
  for (const auto& inst : out.instances) {
    passed += inst.value("ok", false);
    errors += inst.contains("error");
  }
  aggregate["instances"] = out.instances.size();
  aggregate["passed"] = passed;
  aggregate["errors"] = errors;
  aggregate["skipped"] = out.skipped.size();
  report["instances"] = out.instances;
  report["skipped"] = out.skipped;
  report["aggregate"] = aggregate;
  report["ok"] = out.ok;
  if (config.timings) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report["timings"] = {{"wall_seconds", secs}};
  }
  return {report, out.ok};
}

std::string report_to_csv(const json& report) {
  if (!report.contains("instances") || !report["instances"].is_array())
    throw PreconditionError("csv: report has no instances array");
  std::vector<std::string> columns{"name", "ok"};
  for (const auto& inst : report["instances"])
    for (auto it = inst.begin(); it != inst.end(); ++it)
      if (std::find(columns.begin(), columns.end(), it.key()) == columns.end()) columns.push_back(it.key());
  auto cell = [](const json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& inst : report["instances"]) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ",";
      if (inst.contains(columns[i])) out += cell(inst[columns[i]]);
    }
    out += "\n";
  }
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw PreconditionError("loglog_slope: need two or more points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace polyprg
