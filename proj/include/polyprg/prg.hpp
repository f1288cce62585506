#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyprg/fraction.hpp"
#include "polyprg/hsg.hpp"
#include "polyprg/lecerf.hpp"
#include "polyprg/mpoly.hpp"

namespace polyprg {

/// G(r, s, u, v) = (H(s) u + H(r) v, v) on the seed space T x T x F_q x F_q.
struct PrgSpec {
  HsgSpec H;
  Field field;
  unsigned n = 0;

  std::uint64_t plane_count() const { return H.seed_count() * H.seed_count(); }
};

PrgSpec make_prg(const HsgSpec& H);

std::vector<FieldElem> prg_eval(const PrgSpec& G, std::uint64_t r, std::uint64_t s, FieldElem u, FieldElem v);

/// Occurrence counts of f's values over F_q.
struct EmpiricalDist {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
};

/// 1/2 sum |P(a) - Q(a)|, exactly.
Fraction statistical_distance(const EmpiricalDist& a, const EmpiricalDist& b);

/// Largest point count enumerated exactly.
inline constexpr std::uint64_t kExactEnumerationBudget = std::uint64_t{1} << 28;

/// f(U) for U uniform on F_q^{n+1}, by full enumeration.
EmpiricalDist uniform_distribution(const MPoly& f, unsigned workers = 1);

/// f(G(U_S)), enumerating every plane and every (u, v).
EmpiricalDist generator_distribution(const MPoly& f, const PrgSpec& G, unsigned workers = 1);

Fraction dist_exact(const MPoly& f, const PrgSpec& G, unsigned workers = 1);

struct McEstimate {
  double distance = 0;
  double half_width = 0;
  std::uint64_t samples = 0;
  bool uniform_exact = false;
};

/// Samples per deterministic random stream; stream c is keyed by
/// (rng_seed, c), so results do not depend on the worker count.
inline constexpr std::uint64_t kMcChunk = std::uint64_t{1} << 16;
inline constexpr unsigned kBootstrapReplicates = 200;

/// Plug-in distance between sampled f(G) and f(U) (exact when q^{n+1} is
/// within budget). The half-width is the 99th percentile of the bootstrap
/// distance between resampled and observed histograms, which bounds the
/// estimate's deviation through the triangle inequality.
McEstimate dist_mc(const MPoly& f, const PrgSpec& G, std::uint64_t samples, std::uint64_t rng_seed,
                   unsigned workers = 1);

enum class Decomp { Decomposable, Indecomposable, Unknown };
std::string to_string(Decomp d);

struct DecompResult {
  Decomp verdict = Decomp::Unknown;
  std::optional<FieldElem> witness;  // lambda with F - lambda absolutely irreducible
  unsigned fibers_tested = 0;
  unsigned reducible_fibers = 0;
};

/// Absolute irreducibility of one fiber F - lambda (F bivariate).
bool fiber_is_irreducible(const MPoly& F, FieldElem lambda, unsigned k_max = kDefaultKMax);

/// Fiber scan: an absolutely irreducible fiber proves indecomposability;
/// more than d-1 reducible fibers is taken as decomposability (a spectrum
/// bound, used as an oracle heuristic); otherwise unknown.
DecompResult is_decomposable_biv(const MPoly& F, unsigned k_max = kDefaultKMax);

/// Irreducibility of the first `count` fibers in canonical order, for
/// property checks.
std::vector<std::pair<FieldElem, bool>> fiber_profile(const MPoly& F, unsigned count, unsigned k_max = kDefaultKMax);

struct PlaneRef {
  std::uint64_t r = 0;
  std::uint64_t s = 0;
};

struct SurvivalReport {
  std::uint64_t planes = 0;
  std::uint64_t good = 0;
  std::uint64_t bad = 0;
  std::uint64_t unknown = 0;
  std::vector<PlaneRef> bad_planes;
  std::vector<PlaneRef> unknown_planes;
  Fraction good_fraction() const;
  Fraction bad_fraction() const;
};

/// Classifies F = f(b x + a y, y), a = H(r), b = H(s), for every (r, s).
/// Constant restrictions and inconclusive scans count as unknown. Throws
/// PreconditionError when no restriction is indecomposable (f is then
/// decomposable).
SurvivalReport restriction_survival(const MPoly& f, const PrgSpec& G, unsigned workers = 1,
                                    unsigned k_max = kDefaultKMax);

}  // namespace polyprg
