#include <doctest.h>

#include "polyprg/hyph.hpp"
#include "polyprg/parse.hpp"

using namespace polyprg;

namespace {
MPoly P(const std::string& s, const Field& F, unsigned n) { return parse_poly(s, F, n); }
}  // namespace

TEST_CASE("B polynomial examples") {
  auto F7 = mk_prime_field(7);
  CHECK(top_coeff_sum_B(P("y^2", F7, 1)) == P("1", F7, 1));
  CHECK(top_coeff_sum_B(P("x1^2", F7, 1)) == P("x1^2", F7, 1));
  const MPoly f = P("x1*y + x2^2", F7, 2);
  CHECK(top_coeff_sum_B(f) == P("x1 + x2^2", F7, 2));
  for (unsigned a1 = 0; a1 < 7; ++a1)
    for (unsigned a2 = 0; a2 < 7; ++a2) {
      const std::vector<FieldElem> a = {F7->elem(a1), F7->elem(a2)};
      const FieldElem lead = shear(f, a).coeff(Monomial::of(Var::y(), 2));
      CHECK(lead.index() == (a1 + a2 * a2) % 7);
    }
  CHECK_THROWS_AS(top_coeff_sum_B(MPoly(F7, 1)), PreconditionError);
}

TEST_CASE("B gives the top y-coefficient of every shear") {
  auto F23 = mk_prime_field(23);
  const std::vector<std::pair<std::string, unsigned>> corpus = {
      {"x1*y + x2^2", 2}, {"y^3 + x1*y^2 + x2^3 + 1", 2}, {"x1^2*y^2 + x1*x2*x3*y + 3*x3^4 + y", 3},
      {"2*x1^3 + x2*y^2 + y", 2}, {"x1*x2*x3 + y^2*x3 + 5", 3}};
  for (const auto& [text, n] : corpus) {
    const MPoly f = P(text, F23, n);
    const MPoly B = top_coeff_sum_B(f);
    CHECK(B.degree() <= f.degree());
    const unsigned d = static_cast<unsigned>(f.degree());
    std::uint64_t total = 1;
    for (unsigned i = 0; i < n; ++i) total *= 23;
    std::vector<FieldElem> point(n + 1, F23->zero());
    for (std::uint64_t s = 0; s < total; ++s) {
      std::uint64_t r = s;
      std::vector<FieldElem> a;
      for (unsigned i = 0; i < n; ++i, r /= 23) a.push_back(F23->elem(r % 23));
      std::copy(a.begin(), a.end(), point.begin());
      const FieldElem b = B.eval(point);
      const FieldElem lead = shear(f, a).coeff_of(Var::y(), d).constant_term();
      REQUIRE(b == lead);
    }
  }
}

TEST_CASE("Hypothesis (H) examples") {
  auto F7 = mk_prime_field(7);
  auto r = check_H(P("y^2 - 1 - x1", F7, 1));
  CHECK(r.pass());
  CHECK(r.resultant == P("3", F7, 1));
  auto r2 = check_H(P("y^2", F7, 1));
  CHECK(r2.monic_ok);
  CHECK_FALSE(r2.sep_ok);
  auto r3 = check_H(P("x1*y^2", F7, 1));
  CHECK_FALSE(r3.monic_ok);
  CHECK_FALSE(check_H(P("y + x1^2", F7, 1)).monic_ok);
  CHECK_THROWS_AS(check_H(P("3", F7, 1)), PreconditionError);
  CHECK_THROWS_AS(check_H(P("y^2 + t", F7, 1)), PreconditionError);
  CHECK(check_H(P("y^2 + t", F7, 1), true).pass());
}

TEST_CASE("resultant profile examples") {
  auto F7 = mk_prime_field(7);
  const MPoly h = resultant_profile_t(P("y^2 + x1 + 3", F7, 1), F7->one());
  CHECK(h.degree(Var::t()) == 1);
  CHECK(h.coeff(Monomial::of(Var::t(), 1)).index() == 4);
  for (unsigned c0 = 0; c0 < 7; ++c0) {
    const MPoly f = P("y^2 + " + std::to_string(c0), F7, 0);
    CHECK(resultant_profile_t(f, F7->one()) == P("4*t + " + std::to_string(4 * c0), F7, 0));
  }
  const MPoly h1 = resultant_profile_t(P("y", F7, 0), F7->elem(3));
  CHECK(h1.is_nonzero_constant());
  CHECK_THROWS_AS(resultant_profile_t(P("y^3 + 1", mk_prime_field(3), 0), mk_prime_field(3)->one()),
                  PreconditionError);
  CHECK_THROWS_AS(resultant_profile_t(P("x1*y^2 + 1", F7, 1), F7->one()), PreconditionError);
}

TEST_CASE("monicization examples") {
  auto F23 = mk_prime_field(23);
  const HsgSpec H2 = grid_hsg(2, 3, default_delta(2, Fraction(1), 23), F23);
  const auto m0 = monicize(P("y^2 + x1*x2 + 1", F23, 2), H2);
  CHECK(m0.seed == 0);
  CHECK(m0.c.is_one());
  CHECK(m0.a == std::vector<FieldElem>{F23->zero(), F23->zero()});

  const MPoly f = P("x1*y + x2^2", F23, 2);
  const auto m = monicize(f, H2);
  CHECK(m.a == std::vector<FieldElem>{F23->one(), F23->zero()});
  CHECK(m.c.is_one());
  CHECK(m.g == shear(f, m.a) - MPoly::variable(F23, 2, Var::t()));
  CHECK(m.report.pass());
  CHECK(check_H(m.g, true).pass());

  CHECK_THROWS_AS(monicize(P("5", F23, 2), H2), PreconditionError);
  CHECK_THROWS_AS(monicize(P("y^3 + x1", mk_prime_field(5), 1), grid_hsg(1, 5, Fraction(1), mk_prime_field(5))),
                  PreconditionError);
}

TEST_CASE("monicized polynomials satisfy (H) over F[t]") {
  auto F23 = mk_prime_field(23);
  const std::vector<std::pair<std::string, unsigned>> corpus = {
      {"x1*y + x2^2", 2},           {"x1^2 + x2^2 + y", 2},        {"x1^3 + x1*y*x2 + 2", 2},
      {"x1*x2*x3 + x3^2*y + 5", 3}, {"x1^4 + x2^3*y + y^2 + 1", 2}, {"y^2*x1 + x1^2 + 3", 1}};
  for (const auto& [text, n] : corpus) {
    const MPoly f = P(text, F23, n);
    const HsgSpec H = grid_hsg(n, 2 * f.degree() - 1, default_delta(f.degree(), Fraction(1), 23), F23);
    const auto m = monicize(f, H);
    CHECK(check_H(m.g, true).pass());
    CHECK(m.g * m.c == shear(f, m.a) - MPoly::variable(F23, n, Var::t()));
  }
}
