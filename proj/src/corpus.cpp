#include "polyprg/corpus.hpp"

#include <fstream>
#include <random>

#include "polyprg/error.hpp"
#include "polyprg/parse.hpp"

namespace polyprg {

MPoly CorpusEntry::parse() const { return parse_poly(poly, parse_field(field), n); }

nlohmann::json to_json(const CorpusEntry& e) {
  nlohmann::json j{{"name", e.name}, {"field", e.field}, {"n", e.n}, {"poly", e.poly}};
  if (e.satisfies_H) j["satisfies_H"] = *e.satisfies_H;
  if (e.decomposable) j["decomposable"] = *e.decomposable;
  if (e.abs_factors) j["abs_factors"] = *e.abs_factors;
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

CorpusEntry corpus_entry_from_json(const nlohmann::json& j) {
  CorpusEntry e;
  try {
    e.name = j.at("name").get<std::string>();
    e.field = j.at("field").get<std::string>();
    e.n = j.at("n").get<unsigned>();
    e.poly = j.at("poly").get<std::string>();
    if (j.contains("satisfies_H")) e.satisfies_H = j["satisfies_H"].get<bool>();
    if (j.contains("decomposable")) e.decomposable = j["decomposable"].get<bool>();
    if (j.contains("abs_factors")) e.abs_factors = j["abs_factors"].get<unsigned>();
    if (j.contains("note")) e.note = j["note"].get<std::string>();
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("corpus entry: ") + ex.what(), 0);
  }
  return e;
}

const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> corpus = [] {
    std::vector<CorpusEntry> c;
    auto add = [&](std::string name, std::string field, unsigned n, std::string poly, std::optional<bool> H,
                   std::optional<bool> dec, std::optional<unsigned> factors, std::string note = "") {
      c.push_back({std::move(name), std::move(field), n, std::move(poly), H, dec, factors, std::move(note)});
    };
    add("parabola", "23", 1, "y^2 - x1 - 1", true, false, 1u, "every fiber is linear in x1");
    add("two-lines", "23", 1, "y^2 - 3*y + 2 + x1 - x1^2", true, false, 2u, "(y - 1 - x1)(y - 2 + x1)");
    add("hyperbola", "23", 1, "y^2 - x1^2 - 1", true, false, 1u);
    add("conjugate-lines", "23", 1, "y^2 - 5*x1^2 - 10*x1 - 5", true, false, 2u,
        "y^2 - 5(x1+1)^2; 5 is a non-square mod 23");
    add("conic-family", "23", 1, "y^2 + x1*y + x1^2 + x1 + 1", true, false, 1u, "distance-scaling family");
    add("cusp", "23", 1, "y^3 + x1", false, false, 1u, "f(0,y) = y^3 is not squarefree");
    add("cubic-plane", "23", 1, "y^3 - x1*y^2 + x1^2 + 3", true, false, 1u);
    add("univariate-cubic", "23", 1, "y^3 - 7*y^2 + 14*y - 8", true, true, 3u, "(y-1)(y-2)(y-4)");
    add("composed-quartic", "23", 1, "y^4 + 2*x1*y^2 + 5*y^2 + x1^2 + 5*x1 + 4", true, true, 2u,
        "h^2 + 3h, h = y^2 + x1 + 1");
    add("composed-quartic-singular", "23", 1, "y^4 + 2*x1*y^2 + x1^2 + y^2 + x1", false, true, 2u,
        "h^2 + h, h = y^2 + x1");
    add("nonmonic", "23", 1, "x1*y^2 + y + x1^2", false, false, 1u, "deg_y < deg; needs a shear");
    add("bertini-example", "23", 2, "y^2 - 1 - x1 - x2^2", true, false, 1u);
    add("bertini-example-f7", "7", 2, "y^2 - 1 - x1 - x2^2", true, false, 1u);
    add("linear", "23", 2, "y + x1 + x2", true, false, 1u);
    add("bilinear-quadric", "23", 2, "x1*x2 + y^2 + x1", false, false, 1u, "f(0,y) = y^2");
    add("prime-cubic", "23", 2, "y^3 + x1*y + x2^2 + x1 + 1", true, false, 1u);
    add("prime-cubic-2", "23", 2, "y^3 + x1*x2*y + x1^3 + x2 + 5", true, false, 1u);
    add("three-planes", "23", 2, "y^3 - x1^2*y - x1*x2*y - x2^2*y - x1*y - 2*x2*y - y + x1^2*x2 + x1*x2^2 + x1^2 + 2*x1*x2 + x1",
        true, false, 3u, "(y - x1)(y - 1 - x2)(y + 1 + x1 + x2)");
    add("quartic", "23", 2, "y^4 + x1*y + x2 + 1", true, false, 1u);
    add("two-paraboloids", "23", 2, "y^4 + x1*y^2 + x2*y^2 + 3*y^2 + x1*x2 + x1 + 2*x2 + 2", true, false, 2u,
        "(y^2 + x1 + 2)(y^2 + x2 + 1)");
    add("three-vars", "23", 3, "y^2 + x1*x2 + x3 + 1", true, false, 1u);
    add("extension-field", "7^2", 1, "y^2 + (w)*x1 + 1", true, false, 1u);
    return c;
  }();
  return corpus;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open corpus file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw ParseError(std::string("corpus file: ") + ex.what(), ex.byte);
  }
  if (!j.is_array()) throw ParseError("corpus file must hold a JSON array", 0);
  std::vector<CorpusEntry> out;
  for (const auto& e : j) out.push_back(corpus_entry_from_json(e));
  return out;
}

std::vector<CorpusEntry> random_corpus(const std::string& field, unsigned n, unsigned deg, unsigned count,
                                       std::uint64_t rng_seed) {
  const Field F = parse_field(field);
  std::mt19937_64 rng(rng_seed);
  std::vector<CorpusEntry> out;
  for (unsigned i = 0; i < count; ++i) {
    std::vector<Term> terms;
    std::function<void(unsigned, Monomial, unsigned)> rec = [&](unsigned slot, Monomial m, unsigned left) {
      if (slot == n + 1) {
        for (unsigned e = 0; e <= left && e < deg; ++e) {
          if (rng() % 2) terms.push_back({m * Monomial::of(Var::y(), e), static_cast<std::uint32_t>(rng() % F->size())});
        }
        return;
      }
      for (unsigned e = 0; e <= left; ++e) rec(slot + 1, m * Monomial::of(Var::x(slot), e), left - e);
    };
    rec(1, Monomial{}, deg);
    terms.push_back({Monomial::of(Var::y(), deg), 1});
    const MPoly f = MPoly::from_terms(F, n, std::move(terms));
    out.push_back({"random-" + std::to_string(i), field, n, to_string(f), std::nullopt, std::nullopt, std::nullopt, ""});
  }
  return out;
}

}  // namespace polyprg
