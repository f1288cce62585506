#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "polyprg/hsg.hpp"
#include "polyprg/parse.hpp"

using namespace polyprg;

TEST_CASE("fraction arithmetic and parsing") {
  CHECK(Fraction(2, 4) == Fraction(1, 2));
  CHECK(Fraction(1, -3) == Fraction(-1, 3));
  CHECK(Fraction(1, 2) + Fraction(1, 3) == Fraction(5, 6));
  CHECK(Fraction(7, 2).ceil() == 4);
  CHECK(Fraction(6, 2).ceil() == 3);
  CHECK(parse_fraction("0.5") == Fraction(1, 2));
  CHECK(parse_fraction("3/12") == Fraction(1, 4));
  CHECK(parse_fraction("2") == Fraction(2));
  CHECK(parse_fraction("-0.25") == Fraction(-1, 4));
  CHECK(Fraction(5, 6).to_string() == "5/6");
  CHECK_THROWS_AS(parse_fraction("abc"), ParseError);
  CHECK_THROWS_AS(Fraction(1, 0), PreconditionError);
}

TEST_CASE("grid HSG examples") {
  auto F7 = mk_prime_field(7);
  const HsgSpec H = grid_hsg(2, 3, Fraction(1, 2), F7);
  CHECK(H.support.size() == 6);
  CHECK(H.seed_count() == 36);
  CHECK(density_check(H, parse_poly("1", F7, 2)) == Fraction(0));
  const FieldElem s1 = H.support[0], s2 = H.support[1];
  const MPoly x1 = MPoly::variable(F7, 2, Var::x(1)), x2 = MPoly::variable(F7, 2, Var::x(2));
  const MPoly l1 = x1 - MPoly::constant(F7, 2, s1);
  CHECK(density_check(H, l1) == Fraction(1, 6));
  const MPoly l2 = x2 - MPoly::constant(F7, 2, s2);
  // Inclusion-exclusion: 1 - (5/6)^2.
  CHECK(density_check(H, l1 * l2) == Fraction(1) - Fraction(25, 36));
  CHECK(density_check(H, l1 * l2, 3) == Fraction(11, 36));
  CHECK_THROWS_AS(grid_hsg(1, 7, Fraction(1, 2), F7), PreconditionError);
  CHECK_THROWS_AS(density_check(H, parse_poly("x1^4", F7, 2)), PreconditionError);
  // Seed digits: coordinate 1 least significant.
  CHECK(H.eval(1) == std::vector<FieldElem>{F7->elem(1), F7->elem(0)});
  CHECK(H.eval(6) == std::vector<FieldElem>{F7->elem(0), F7->elem(1)});
}

TEST_CASE("Kronecker HSG examples") {
  auto F23 = mk_prime_field(23);
  const HsgSpec H1 = kronecker_hsg(1, 3, Fraction(1, 2), F23);
  CHECK(H1.support.size() == 6);
  for (std::uint64_t s = 0; s < H1.seed_count(); ++s) CHECK(H1.eval(s)[0] == H1.support[s]);

  const HsgSpec H = kronecker_hsg(2, 2, Fraction(1, 2), F23);
  CHECK(H.exponents == std::vector<std::uint64_t>{1, 3});
  CHECK(H.support.size() == 12);
  const MPoly f = parse_poly("x2 - x1^2", F23, 2);
  std::int64_t roots = 0;
  for (std::uint32_t t = 0; t < 12; ++t) roots += (t * t * t % 23) == (t * t % 23);
  CHECK(density_check(H, f) == Fraction(roots, 12));
  CHECK(density_check(H, f) <= Fraction(3, 12));
  // x2 - x1^3 composes to zero; it lies outside the degree bound.
  CHECK_THROWS_AS(density_check(H, parse_poly("x2 - x1^3", F23, 2)), PreconditionError);
  CHECK_THROWS_AS(kronecker_hsg(3, 3, Fraction(1, 2), mk_prime_field(7)), PreconditionError);
}

TEST_CASE("evaluation into an extension") {
  auto F7 = mk_prime_field(7);
  auto F49 = mk_extension(7, 2);
  const HsgSpec H = grid_hsg(2, 2, Fraction(1, 2), F7);
  for (std::uint64_t s = 0; s < H.seed_count(); ++s) {
    auto p = H.eval(s);
    auto q = hsg_eval(H, s, *F49);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(q[i].index() == p[i].index());
    CHECK(hsg_eval(H, s, *F7) == p);
  }
  CHECK_THROWS_AS(hsg_eval(H, 0, *mk_prime_field(5)), PreconditionError);
  CHECK_THROWS_AS(hsg_eval(H, 0, *mk_extension(5, 2)), PreconditionError);

  // Nonzero polynomials over F_49 of degree <= 2, scanned over every seed.
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<Term> terms;
    const MPoly g = oracle::random_poly(F49, 2, 2, rng, 0.4);
    for (const auto& t : g.terms())
      if (t.mono.exp(Var::y()) == 0) terms.push_back(t);
    const MPoly f = MPoly::from_terms(F49, 2, terms);
    if (f.is_zero()) continue;
    REQUIRE(density_check(H, f) <= H.delta);
  }
  // Products of two lines with F_49 coefficients reach the bound most easily.
  const FieldElem w = F49->gen();
  const MPoly x1 = MPoly::variable(F49, 2, Var::x(1)), x2 = MPoly::variable(F49, 2, Var::x(2));
  const MPoly f = (x1 - MPoly::constant(F49, 2, F49->one())) * (x2 * w + x1);
  CHECK(density_check(H, f) <= H.delta);
}

TEST_CASE("grid density is bounded exhaustively on small fields") {
  for (unsigned p : {5u, 7u}) {
    auto F = mk_prime_field(p);
    // n = 1, D = 3: every nonzero cubic.
    const HsgSpec H1 = grid_hsg(1, 3, Fraction(3, 4), F);
    const Fraction bound1 = Fraction(3, static_cast<std::int64_t>(H1.support.size()));
    for (std::uint32_t idx = 1; idx < p * p * p * p; ++idx) {
      std::vector<Term> terms;
      std::uint32_t r = idx;
      for (unsigned e = 0; e <= 3; ++e, r /= p)
        if (r % p) terms.push_back({Monomial::of(Var::x(1), e), r % p});
      const MPoly f = MPoly::from_terms(F, 1, terms);
      REQUIRE(density_check(H1, f) <= bound1);
    }
  }
  // n = 2, D = 2 over F_5: all 5^6 - 1 nonzero quadratics.
  auto F5 = mk_prime_field(5);
  const HsgSpec H = grid_hsg(2, 2, Fraction(1, 2), F5);
  const Fraction bound = Fraction(2, static_cast<std::int64_t>(H.support.size()));
  const std::vector<Monomial> monos = {Monomial{},
                                       Monomial::of(Var::x(1), 1),
                                       Monomial::of(Var::x(2), 1),
                                       Monomial::of(Var::x(1), 2),
                                       Monomial::of(Var::x(1), 1) * Monomial::of(Var::x(2), 1),
                                       Monomial::of(Var::x(2), 2)};
  for (std::uint32_t idx = 1; idx < 15625; ++idx) {
    std::vector<Term> terms;
    std::uint32_t r = idx;
    for (const auto& m : monos) {
      if (r % 5) terms.push_back({m, r % 5});
      r /= 5;
    }
    REQUIRE(density_check(H, MPoly::from_terms(F5, 2, terms)) <= bound);
  }
}

TEST_CASE("grid bound is attained by a product of support lines") {
  auto F7 = mk_prime_field(7);
  for (unsigned D = 1; D <= 3; ++D) {
    const HsgSpec H = grid_hsg(2, D, Fraction(1, 2), F7);
    MPoly f = MPoly::constant(F7, 2, 1);
    for (unsigned j = 0; j < D; ++j) f *= MPoly::variable(F7, 2, Var::x(1)) - MPoly::constant(F7, 2, H.support[j]);
    CHECK(density_check(H, f) == Fraction(D, static_cast<std::int64_t>(H.support.size())));
  }
}

TEST_CASE("density is unchanged by moving to an extension") {
  auto F7 = mk_prime_field(7);
  const HsgSpec H = grid_hsg(2, 3, Fraction(1, 2), F7);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Term> terms;
    const MPoly g = oracle::random_poly(F7, 2, 3, rng);
    for (const auto& t : g.terms())
      if (t.mono.exp(Var::y()) == 0) terms.push_back(t);
    const MPoly f = MPoly::from_terms(F7, 2, terms);
    if (f.is_zero()) continue;
    const Fraction base = density_check(H, f);
    CHECK(density_check(H, change_field(f, mk_extension(7, 2))) == base);
    CHECK(density_check(H, change_field(f, mk_extension(7, 3))) == base);
  }
}

TEST_CASE("default delta") {
  CHECK(default_delta(2, Fraction(1), 23) == Fraction(3, 23));
  CHECK(default_delta(3, Fraction(2), 23) == Fraction(10, 23));
  const HsgSpec H = grid_hsg(2, 3, default_delta(2, Fraction(1), 23), mk_prime_field(23));
  CHECK(H.support.size() == 23);
}
