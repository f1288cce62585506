#include <doctest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "polyprg/parse.hpp"
#include "polyprg/prg.hpp"

using namespace polyprg;

namespace {

PrgSpec prg_for(const Field& F, unsigned n, unsigned d) {
  return make_prg(grid_hsg(n, 2 * d - 1, default_delta(d, Fraction(1), F->size()), F));
}

/// Distance by direct enumeration of seeds and points through MPoly::eval.
Fraction brute_distance(const MPoly& f, const HsgSpec& H) {
  const FieldCtx& K = f.ctx();
  const unsigned n = f.nvars();
  const std::uint64_t q = K.size();
  std::map<std::uint32_t, std::int64_t> gen, uni;
  std::int64_t gen_total = 0, uni_total = 0;
  for (std::uint64_t r = 0; r < H.seed_count(); ++r)
    for (std::uint64_t s = 0; s < H.seed_count(); ++s)
      for (std::uint32_t u = 0; u < q; ++u)
        for (std::uint32_t v = 0; v < q; ++v) {
          const auto a = H.eval(r), b = H.eval(s);
          std::vector<FieldElem> pt;
          for (unsigned i = 0; i < n; ++i) pt.push_back(b[i] * K.elem(u) + a[i] * K.elem(v));
          pt.push_back(K.elem(v));
          ++gen[f.eval(pt).index()];
          ++gen_total;
        }
  std::uint64_t points = 1;
  for (unsigned i = 0; i <= n; ++i) points *= q;
  for (std::uint64_t idx = 0; idx < points; ++idx) {
    std::vector<FieldElem> pt;
    std::uint64_t r = idx;
    for (unsigned i = 0; i <= n; ++i, r /= q) pt.push_back(K.elem(static_cast<std::uint32_t>(r % q)));
    ++uni[f.eval(pt).index()];
    ++uni_total;
  }
  Fraction sum(0);
  for (std::uint32_t a = 0; a < q; ++a) {
    const Fraction diff = Fraction(gen[a], gen_total) - Fraction(uni[a], uni_total);
    sum = sum + (diff < Fraction(0) ? Fraction(0) - diff : diff);
  }
  return sum * Fraction(1, 2);
}

/// For prime degree, F = g(h) forces h linear, so F is a polynomial in one
/// linear form: beta F_x = alpha F_y for some (alpha, beta) != 0.
bool gradient_decomposable(const MPoly& F) {
  const std::int64_t p = F.ctx().p();
  const int d = F.degree();
  if (d < 2) return false;
  std::map<std::pair<int, int>, std::int64_t> fx, fy;
  for (const auto& t : F.terms()) {
    const int i = static_cast<int>(t.mono.exp(Var::x(1))), j = static_cast<int>(t.mono.exp(Var::y()));
    const std::int64_t c = t.coeff;
    if (i > 0) fx[{i - 1, j}] = oracle::modp(fx[{i - 1, j}] + c * i, p);
    if (j > 0) fy[{i, j - 1}] = oracle::modp(fy[{i, j - 1}] + c * j, p);
  }
  auto proportional = [&](std::int64_t alpha, std::int64_t beta) {
    std::map<std::pair<int, int>, std::int64_t> diff;
    for (auto& [k, c] : fx) diff[k] = oracle::modp(diff[k] + beta * c, p);
    for (auto& [k, c] : fy) diff[k] = oracle::modp(diff[k] - alpha * c, p);
    for (auto& [k, c] : diff)
      if (c != 0) return false;
    return true;
  };
  if (proportional(1, 0)) return true;
  for (std::int64_t alpha = 0; alpha < p; ++alpha)
    if (proportional(alpha, 1)) return true;
  return false;
}

}  // namespace

TEST_CASE("prg_eval examples") {
  auto F7 = mk_prime_field(7);
  const PrgSpec G = make_prg(grid_hsg(2, 2, Fraction(2, 7), F7));
  // Find seeds with H(r) = (1,2) and H(s) = (3,4).
  const std::uint64_t m = G.H.support.size();
  const std::uint64_t r = 1 + 2 * m, s = 3 + 4 * m;
  REQUIRE(G.H.eval(r) == std::vector<FieldElem>{F7->elem(1), F7->elem(2)});
  REQUIRE(G.H.eval(s) == std::vector<FieldElem>{F7->elem(3), F7->elem(4)});
  CHECK(prg_eval(G, r, s, F7->one(), F7->one()) ==
        std::vector<FieldElem>{F7->elem(4), F7->elem(6), F7->elem(1)});
  CHECK(prg_eval(G, r, s, F7->zero(), F7->zero()) ==
        std::vector<FieldElem>{F7->zero(), F7->zero(), F7->zero()});
  CHECK(prg_eval(G, r, s, F7->elem(2), F7->zero()) ==
        std::vector<FieldElem>{F7->elem(6), F7->elem(1), F7->zero()});
  CHECK_THROWS_AS(prg_eval(G, G.H.seed_count(), 0, F7->one(), F7->one()), PreconditionError);
}

TEST_CASE("exact distance examples") {
  auto F5 = mk_prime_field(5);
  const PrgSpec G1 = make_prg(grid_hsg(1, 1, Fraction(1, 5), F5));
  REQUIRE(G1.H.support.size() == 5);
  CHECK(dist_exact(parse_poly("y", F5, 1), G1) == Fraction(0));
  CHECK(dist_exact(parse_poly("3", F5, 1), G1) == Fraction(0));
  const MPoly x1 = parse_poly("x1", F5, 1);
  const Fraction d = dist_exact(x1, G1);
  CHECK(d == brute_distance(x1, G1.H));
  // x1 = b u + a v vanishes whenever a = b = 0 beyond the uniform rate.
  CHECK(d > Fraction(0));

  const MPoly y2 = parse_poly("y^2", F5, 1);
  CHECK(dist_exact(y2, G1) == Fraction(0));
}

TEST_CASE("exact distance matches brute-force recount") {
  std::mt19937_64 rng(11);
  for (unsigned p : {5u, 7u}) {
    auto F = mk_prime_field(p);
    for (unsigned n : {1u, 2u}) {
      const HsgSpec H = grid_hsg(n, 2, Fraction(2, 3), F);
      const PrgSpec G = make_prg(H);
      for (int trial = 0; trial < 6; ++trial) {
        const MPoly f = oracle::random_poly(F, n, 3, rng, 0.5);
        if (f.is_zero()) continue;
        CHECK(dist_exact(f, G) == brute_distance(f, H));
        CHECK(dist_exact(f, G, 3) == dist_exact(f, G));
      }
    }
  }
}

TEST_CASE("distance is a metric on corpus triples") {
  auto F7 = mk_prime_field(7);
  const PrgSpec G = prg_for(F7, 2, 2);
  const std::vector<std::string> corpus = {"y^2 - 1 - x1 - x2^2", "x1*x2 + y", "x1^2 + x2^2", "x1 + 2*y^2"};
  std::vector<EmpiricalDist> dists;
  for (const auto& text : corpus) {
    const MPoly f = parse_poly(text, F7, 2);
    dists.push_back(generator_distribution(f, G));
    dists.push_back(uniform_distribution(f));
  }
  for (const auto& a : dists)
    for (const auto& b : dists) {
      CHECK(statistical_distance(a, b) == statistical_distance(b, a));
      for (const auto& c : dists)
        CHECK(statistical_distance(a, c) <= statistical_distance(a, b) + statistical_distance(b, c));
    }
  CHECK(dist_exact(parse_poly("y^3 + 2*y", F7, 2), G) == Fraction(0));
}

TEST_CASE("Monte-Carlo distance: determinism and coverage") {
  auto F7 = mk_prime_field(7);
  const PrgSpec G = prg_for(F7, 2, 2);
  const MPoly y = parse_poly("y", F7, 2);
  const McEstimate e = dist_mc(y, G, 20000, 5);
  CHECK(e.uniform_exact);
  CHECK(e.distance <= e.half_width);
  CHECK_THROWS_AS(dist_mc(y, G, 69, 5), PreconditionError);

  const MPoly f = parse_poly("x1*x2 + y^2 + x1", F7, 2);
  const McEstimate a = dist_mc(f, G, 300000, 9, 1);
  const McEstimate b = dist_mc(f, G, 300000, 9, 1);
  const McEstimate c = dist_mc(f, G, 300000, 9, 3);
  CHECK(a.distance == b.distance);
  CHECK(a.half_width == b.half_width);
  CHECK(a.distance == c.distance);
  CHECK(a.half_width == c.half_width);

  for (const char* text : {"x1*x2 + y^2 + x1", "x1^2 + x2", "y"}) {
    const MPoly g = parse_poly(text, F7, 2);
    const double exact = dist_exact(g, G).to_double();
    int covered = 0;
    const int trials = 100;
    for (int seed = 0; seed < trials; ++seed) {
      const McEstimate est = dist_mc(g, G, 5000, seed);
      covered += std::abs(est.distance - exact) <= est.half_width;
    }
    CHECK(covered >= trials * 95 / 100);
  }
}

TEST_CASE("sampled uniform side when enumeration is out of budget") {
  auto F = mk_prime_field(1009);
  const PrgSpec G = make_prg(kronecker_hsg(3, 1, Fraction(1, 8), F));
  const MPoly f = parse_poly("x1 + x2 + y", F, 3);
  const McEstimate e = dist_mc(f, G, 20000, 3);
  CHECK_FALSE(e.uniform_exact);
  CHECK(e.distance <= e.half_width);
}

TEST_CASE("decomposability examples") {
  auto F23 = mk_prime_field(23);
  const auto r1 = is_decomposable_biv(parse_poly("y^4 + 2*x1*y^2 + x1^2 + y^2 + x1", F23, 1));
  CHECK(r1.verdict == Decomp::Decomposable);
  CHECK_FALSE(r1.witness.has_value());
  const auto r2 = is_decomposable_biv(parse_poly("y^2 - x1 - 1", F23, 1));
  CHECK(r2.verdict == Decomp::Indecomposable);
  REQUIRE(r2.witness.has_value());
  CHECK(r2.witness->is_zero());
  CHECK(is_decomposable_biv(parse_poly("y", F23, 1)).verdict == Decomp::Indecomposable);
  for (const auto& [lambda, irreducible] : fiber_profile(parse_poly("y^2 - x1 - 1", F23, 1), 23)) CHECK(irreducible);
  CHECK_THROWS_AS(is_decomposable_biv(parse_poly("4", F23, 1)), PreconditionError);
  // Reducible but indecomposable: the fiber at 0 splits, others do not.
  const MPoly g = parse_poly("y^2 - 3*y + 2 + x1 - x1^2", F23, 1);
  CHECK_FALSE(fiber_is_irreducible(g, F23->zero()));
  CHECK(is_decomposable_biv(g).verdict == Decomp::Indecomposable);
  // Needs no monic form in y: x-only input.
  CHECK(is_decomposable_biv(parse_poly("x1^2 + 3", F23, 1)).verdict == Decomp::Decomposable);
  CHECK(is_decomposable_biv(parse_poly("x1*y + 1", F23, 1)).verdict == Decomp::Indecomposable);
}

TEST_CASE("decomposability oracle agrees with the prime-degree gradient test") {
  auto F23 = mk_prime_field(23);
  std::mt19937_64 rng(17);
  int decomposable = 0, total = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned d = 2 + trial % 2;
    MPoly F;
    if (trial % 3 == 0) {
      // g(alpha x + beta y + gamma), deg g = d.
      std::uniform_int_distribution<std::uint32_t> c(0, 22);
      const MPoly h = MPoly::variable(F23, 1, Var::x(1)) * F23->elem(c(rng)) +
                      MPoly::variable(F23, 1, Var::y()) * F23->elem(c(rng)) + MPoly::constant(F23, 1, F23->elem(c(rng)));
      if (h.degree() < 1) continue;
      F = MPoly::constant(F23, 1, F23->elem(c(rng)));
      for (unsigned e = 1; e <= d; ++e) F += h.pow(e) * F23->elem(e == d ? 1 + c(rng) % 22 : c(rng));
    } else {
      F = oracle::random_poly(F23, 1, d, rng, 0.6);
    }
    if (F.degree() < 1) continue;
    const bool expected = gradient_decomposable(F);
    const DecompResult r = is_decomposable_biv(F);
    REQUIRE(r.verdict != Decomp::Unknown);
    CHECK((r.verdict == Decomp::Decomposable) == expected);
    decomposable += expected;
    ++total;
  }
  CHECK(decomposable > 50);
  CHECK(total - decomposable > 50);
}

TEST_CASE("constructed compositions never show an irreducible fiber") {
  auto F23 = mk_prime_field(23);
  const auto three = MPoly::constant(F23, 1, 3);
  std::vector<MPoly> cases;
  const MPoly h1 = parse_poly("y^2 + x1", F23, 1);
  cases.push_back(h1 * h1 + h1);
  const MPoly h2 = parse_poly("y^2 + x1*y + 2", F23, 1);
  cases.push_back(h2 * h2 + three);
  const MPoly h3 = parse_poly("y + x1^2", F23, 1);
  cases.push_back(h3 * h3 * h3 - h3);
  const MPoly h4 = parse_poly("x1*y + y", F23, 1);
  cases.push_back(h4 * h4 + h4 * F23->elem(5));
  for (const auto& F : cases) {
    CHECK(is_decomposable_biv(F).verdict == Decomp::Decomposable);
    for (const auto& [lambda, irreducible] : fiber_profile(F, 8)) CHECK_FALSE(irreducible);
  }
}

TEST_CASE("restriction survival") {
  auto F23 = mk_prime_field(23);
  const PrgSpec G1 = prg_for(F23, 1, 1);
  const SurvivalReport y = restriction_survival(parse_poly("y", F23, 1), G1);
  CHECK(y.good == y.planes);
  CHECK(y.good_fraction() == Fraction(1));

  auto F11 = mk_prime_field(11);
  const PrgSpec G = prg_for(F11, 2, 2);
  const SurvivalReport rep = restriction_survival(parse_poly("y^2 - 1 - x1 - x2^2", F11, 2), G, 2);
  CHECK(rep.planes == 14641);
  CHECK(rep.good + rep.bad + rep.unknown == rep.planes);
  CHECK(rep.bad_fraction() <= Fraction(2) * G.H.delta);
  CHECK(rep.bad_planes.size() == rep.bad);
  // The restriction at a = b = 0 is y^2 - 1, univariate and decomposable.
  REQUIRE_FALSE(rep.bad_planes.empty());
  CHECK(rep.bad_planes.front().r == 0);
  CHECK(rep.bad_planes.front().s == 0);

  const PrgSpec G4 = prg_for(F23, 2, 4);
  CHECK_THROWS_AS(restriction_survival(parse_poly("y^4 + 2*x1*y^2 + x1^2 + y^2 + x1", F23, 2), G4),
                  PreconditionError);
}
