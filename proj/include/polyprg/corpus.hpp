#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyprg/mpoly.hpp"

namespace polyprg {

/// A polynomial with its known properties; unset fields are not asserted.
struct CorpusEntry {
  std::string name;
  std::string field;  // descriptor "p" or "p^k"
  unsigned n = 1;
  std::string poly;
  std::optional<bool> satisfies_H;
  std::optional<bool> decomposable;
  /// Number of absolutely irreducible factors (1: absolutely irreducible).
  std::optional<unsigned> abs_factors;
  std::string note;

  MPoly parse() const;
};

nlohmann::json to_json(const CorpusEntry& e);
CorpusEntry corpus_entry_from_json(const nlohmann::json& j);

const std::vector<CorpusEntry>& builtin_corpus();

/// JSON array of entries.
std::vector<CorpusEntry> load_corpus(const std::string& path);

/// Random polynomials in x_1..x_n, y of total degree <= deg, made monic in
/// y of full degree by adding y^deg; names are "random-<i>".
std::vector<CorpusEntry> random_corpus(const std::string& field, unsigned n, unsigned deg, unsigned count,
                                       std::uint64_t rng_seed);

}  // namespace polyprg
