#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "polyprg/field.hpp"
#include "polyprg/mpoly.hpp"
#include "polyprg/parse.hpp"

using namespace polyprg;

namespace {

// Smallest monic irreducible by brute force: a degree-k polynomial over F_p
// with k <= 3 is irreducible iff it has no root.
std::vector<std::uint32_t> smallest_rootless(std::uint32_t p, unsigned k) {
  std::uint32_t count = 1;
  for (unsigned i = 0; i < k; ++i) count *= p;
  for (std::uint32_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint32_t> c(k + 1, 1);
    // Lexicographic with c_0 compared first: c_0 is the most significant digit.
    std::uint32_t r = idx;
    for (unsigned i = k; i-- > 0;) {
      c[i] = r % p;
      r /= p;
    }
    bool has_root = false;
    for (std::uint32_t x = 0; x < p && !has_root; ++x) {
      std::uint64_t v = 0;
      for (unsigned i = k + 1; i-- > 0;) v = (v * x + c[i]) % p;
      has_root = v == 0;
    }
    if (!has_root) return c;
  }
  return {};
}

std::vector<Field> small_fields() {
  return {mk_prime_field(2),   mk_prime_field(7),   mk_extension(2, 2), mk_extension(2, 3),
          mk_extension(3, 2),  mk_extension(3, 3),  mk_extension(5, 2), mk_extension(7, 2),
          mk_extension(2, 6),  mk_extension(23, 2), mk_extension(2, 12), mk_extension(3, 7),
          mk_extension(7, 4)};
}

}  // namespace

TEST_CASE("prime field construction") {
  auto F7 = mk_prime_field(7);
  CHECK(F7->k() == 1);
  CHECK((F7->from_int(3) * F7->from_int(5)).is_one());
  auto F23 = mk_prime_field(23);
  CHECK(F23->size() == 23);
  for (unsigned d = 1; d <= 5; ++d) CHECK(23u >= d * (d - 1) + 1);
  CHECK_THROWS_AS(mk_prime_field(6), PreconditionError);
  CHECK_THROWS_AS(mk_prime_field(1), PreconditionError);
}

TEST_CASE("extension moduli are the smallest irreducibles") {
  CHECK(mk_extension(7, 1)->modulus().empty());
  CHECK(mk_extension(7, 1) == mk_prime_field(7));
  auto F4 = mk_extension(2, 2);
  CHECK(std::vector<std::uint32_t>(F4->modulus().begin(), F4->modulus().end()) ==
        std::vector<std::uint32_t>{1, 1, 1});
  auto F9 = mk_extension(3, 2);
  CHECK(std::vector<std::uint32_t>(F9->modulus().begin(), F9->modulus().end()) ==
        std::vector<std::uint32_t>{1, 0, 1});
  for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {5, 2}, {7, 2}, {7, 3}, {23, 2}, {3, 3}}) {
    auto F = mk_extension(p, k);
    CHECK(std::vector<std::uint32_t>(F->modulus().begin(), F->modulus().end()) == smallest_rootless(p, k));
  }
  CHECK(mk_extension(5, 2) == mk_extension(5, 2));
}

TEST_CASE("field descriptor parsing") {
  CHECK(parse_field("23") == mk_prime_field(23));
  CHECK(parse_field("7^2") == mk_extension(7, 2));
  CHECK(parse_field("7^2")->descriptor() == "7^2");
  CHECK_THROWS(parse_field("6"));
  CHECK_THROWS(parse_field("7^"));
  CHECK_THROWS(parse_field("abc"));
  CHECK_THROWS_AS(mk_extension(2, 21), BudgetError);
}

TEST_CASE("table multiplication agrees with power-basis multiplication") {
  for (const auto& F : small_fields()) {
    if (F->size() > 600) continue;
    for (std::uint32_t a = 0; a < F->size(); ++a)
      for (std::uint32_t b = 0; b < F->size(); ++b) REQUIRE(F->mul(a, b) == oracle::slow_field_mul(*F, a, b));
  }
}

TEST_CASE("field axioms") {
  std::mt19937_64 rng(7);
  for (const auto& F : small_fields()) {
    const std::uint32_t q = F->size();
    INFO("field " << F->descriptor());
    for (std::uint32_t a = 0; a < q; ++a) {
      const FieldElem ea = F->elem(a);
      REQUIRE(ea + F->zero() == ea);
      REQUIRE(ea * F->one() == ea);
      REQUIRE((ea - ea).is_zero());
      REQUIRE(ea + (-ea) == F->zero());
      if (a) REQUIRE((ea * ea.inv()).is_one());
    }
    if (q <= 81) {
      for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b) {
          const FieldElem ea = F->elem(a), eb = F->elem(b);
          REQUIRE(ea + eb == eb + ea);
          REQUIRE(ea * eb == eb * ea);
          for (std::uint32_t c = 0; c < q; ++c) {
            const FieldElem ec = F->elem(c);
            REQUIRE((ea + eb) + ec == ea + (eb + ec));
            REQUIRE((ea * eb) * ec == ea * (eb * ec));
            REQUIRE(ea * (eb + ec) == ea * eb + ea * ec);
          }
        }
    } else {
      std::uniform_int_distribution<std::uint32_t> pick(0, q - 1);
      for (int it = 0; it < 200000; ++it) {
        const FieldElem ea = F->elem(pick(rng)), eb = F->elem(pick(rng)), ec = F->elem(pick(rng));
        REQUIRE((ea + eb) + ec == ea + (eb + ec));
        REQUIRE((ea * eb) * ec == ea * (eb * ec));
        REQUIRE(ea * (eb + ec) == ea * eb + ea * ec);
      }
    }
  }
}

TEST_CASE("Frobenius is a ring homomorphism") {
  for (const auto& F : small_fields()) {
    if (F->k() == 1) continue;
    const std::uint32_t q = F->size(), p = F->p();
    INFO("field " << F->descriptor());
    std::vector<FieldElem> frob(q);
    for (std::uint32_t a = 0; a < q; ++a) frob[a] = F->elem(a).pow(p);
    // Exhaustive over pairs when affordable, otherwise a fixed stride.
    const std::uint32_t step = q <= 2500 ? 1 : 7;
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; b += step) {
        const FieldElem s = F->elem(a) + F->elem(b), m = F->elem(a) * F->elem(b);
        REQUIRE(frob[s.index()] == frob[a] + frob[b]);
        REQUIRE(frob[m.index()] == frob[a] * frob[b]);
      }
  }
}

TEST_CASE("embedding is a homomorphism") {
  auto check = [](const Field& small, const Field& big) {
    for (std::uint32_t a = 0; a < small->size(); ++a)
      for (std::uint32_t b = 0; b < small->size(); ++b) {
        const FieldElem ea = small->elem(a), eb = small->elem(b);
        REQUIRE(embed(ea + eb, *big) == embed(ea, *big) + embed(eb, *big));
        REQUIRE(embed(ea * eb, *big) == embed(ea, *big) * embed(eb, *big));
      }
    std::set<std::uint32_t> image;
    for (std::uint32_t a = 0; a < small->size(); ++a) image.insert(embed(small->elem(a), *big).index());
    CHECK(image.size() == small->size());
  };
  check(mk_prime_field(7), mk_extension(7, 2));
  CHECK(embed(mk_prime_field(7)->elem(3), *mk_extension(7, 2)).index() == 3);
  check(mk_extension(2, 2), mk_extension(2, 4));
  check(mk_extension(3, 2), mk_extension(3, 4));
  check(mk_extension(2, 3), mk_extension(2, 6));
  CHECK(is_subfield(*mk_extension(2, 2), *mk_extension(2, 6)));
  CHECK_FALSE(is_subfield(*mk_extension(2, 4), *mk_extension(2, 6)));
  CHECK_THROWS_AS(embed(mk_extension(2, 2)->one(), *mk_extension(2, 3)), PreconditionError);
}

TEST_CASE("splitting field examples") {
  auto F7 = mk_prime_field(7);
  auto r1 = splitting_field(parse_poly("y^2 - 1", F7, 0), 4);
  CHECK(r1.field == F7);
  REQUIRE(r1.roots.size() == 2);
  CHECK(r1.roots[0].index() == 1);
  CHECK(r1.roots[1].index() == 6);

  auto r2 = splitting_field(parse_poly("y^2 + 1", F7, 0), 4);
  CHECK(r2.field == mk_extension(7, 2));
  // Exhaustive scan: no square root of -1 in F_7.
  for (unsigned a = 0; a < 7; ++a) CHECK((a * a + 1) % 7 != 0);

  auto F5 = mk_prime_field(5);
  auto r3 = splitting_field(parse_poly("y^2 - y", F5, 0), 4);
  CHECK(r3.field == F5);
  REQUIRE(r3.roots.size() == 2);
  CHECK(r3.roots[0].index() == 0);
  CHECK(r3.roots[1].index() == 1);

  CHECK_THROWS_AS(splitting_field(parse_poly("y^2", F7, 0), 4), PreconditionError);
  CHECK_THROWS_AS(splitting_field(parse_poly("y^2 + 1", F7, 0), 1), BudgetError);
}

TEST_CASE("splitting field roots reproduce the polynomial") {
  std::vector<std::pair<Field, std::string>> cases = {
      {mk_prime_field(7), "y^3 - 2"},           {mk_prime_field(7), "y^2 + y + 3"},
      {mk_prime_field(23), "y^4 + 5*y + 1"},    {mk_prime_field(5), "3*y^3 + y + 2"},
      {mk_extension(7, 2), "y^2 - (w)"},        {mk_prime_field(2), "y^3 + y + 1"},
  };
  for (const auto& [F, text] : cases) {
    INFO(text);
    const MPoly f = parse_poly(text, F, 0);
    auto res = splitting_field(f, 12);
    REQUIRE(res.roots.size() == static_cast<std::size_t>(f.degree()));
    for (std::size_t i = 1; i < res.roots.size(); ++i) CHECK(res.roots[i - 1] < res.roots[i]);
    const MPoly fe = change_field(f, res.field);
    MPoly prod = MPoly::constant(res.field, 0, fe.coeff(Monomial::of(Var::y(), f.degree())));
    for (auto r : res.roots) prod *= MPoly::variable(res.field, 0, Var::y()) - MPoly::constant(res.field, 0, r);
    CHECK(prod == fe);
    CHECK(res.field->k() % F->k() == 0);
  }
}
