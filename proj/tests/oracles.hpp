#pragma once

// Test-only reference implementations. These deliberately avoid the
// library's own algorithms so they can serve as independent checks.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "polyprg/field.hpp"
#include "polyprg/mpoly.hpp"

namespace oracle {

using Dense = std::vector<std::int64_t>;  // coefficients mod p, low degree first

inline Dense trim(Dense a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline std::int64_t modp(std::int64_t v, std::int64_t p) { return ((v % p) + p) % p; }

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, b = modp(a, p), e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline Dense rem(Dense a, const Dense& b, std::int64_t p) {
  a = trim(a);
  const std::int64_t inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::int64_t f = a.back() * inv % p;
    const std::size_t s = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[s + i] = modp(a[s + i] - f * b[i], p);
    a = trim(a);
  }
  return a;
}

/// Degree of gcd over F_p via the Euclidean algorithm.
inline int gcd_degree(Dense a, Dense b, std::int64_t p) {
  a = trim(a);
  b = trim(b);
  while (!b.empty()) {
    Dense r = rem(a, b, p);
    a = b;
    b = r;
  }
  return static_cast<int>(a.size()) - 1;
}

/// Power-basis product in F_p[w]/(modulus), decoded from and encoded to
/// base-p indices.
inline std::uint32_t slow_field_mul(const polyprg::FieldCtx& f, std::uint32_t a, std::uint32_t b) {
  const std::int64_t p = f.p();
  const unsigned k = f.k();
  Dense da(k), db(k);
  for (unsigned i = 0; i < k; ++i) {
    da[i] = a % p;
    a /= p;
    db[i] = b % p;
    b /= p;
  }
  Dense prod(2 * k, 0);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  Dense mod;
  if (k == 1) {
    mod = {0, 1};
  } else {
    for (auto c : f.modulus()) mod.push_back(c);
  }
  Dense r = rem(prod, mod, p);
  std::uint32_t out = 0;
  for (std::size_t i = r.size(); i-- > 0;) out = out * static_cast<std::uint32_t>(p) + static_cast<std::uint32_t>(r[i]);
  return out;
}

/// Leibniz-expansion determinant over any commutative ring type.
template <class R>
R leibniz_det(const std::vector<std::vector<R>>& m, const R& zero) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  R total = zero;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    R prod = zero;
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
      prod = first ? m[i][perm[i]] : prod * m[i][perm[i]];
      first = false;
    }
    total = (inversions % 2) ? total - prod : total + prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Random polynomial with total degree at most `deg` in n x-variables and y.
inline polyprg::MPoly random_poly(const polyprg::Field& F, unsigned n, unsigned deg, std::mt19937_64& rng,
                                  double density = 0.5) {
  using namespace polyprg;
  std::vector<Term> terms;
  std::uniform_int_distribution<std::uint32_t> coeff(1, F->size() - 1);
  std::bernoulli_distribution keep(density);
  std::function<void(unsigned, Monomial, unsigned)> rec = [&](unsigned slot, Monomial m, unsigned left) {
    if (slot == n + 1) {
      for (unsigned e = 0; e <= left; ++e) {
        if (keep(rng)) terms.push_back({m * Monomial::of(Var::y(), e), coeff(rng)});
      }
      return;
    }
    for (unsigned e = 0; e <= left; ++e) rec(slot + 1, m * Monomial::of(Var::x(slot), e), left - e);
  };
  rec(1, Monomial{}, deg);
  return MPoly::from_terms(F, n, std::move(terms));
}

/// Coefficients (low first) of the polynomial of degree < vals.size() taking
/// vals[i] at i = 0, 1, ..., by Gaussian elimination on the Vandermonde system.
inline Dense interpolate(const Dense& vals, std::int64_t p) {
  const std::size_t k = vals.size();
  std::vector<Dense> a(k, Dense(k + 1));
  for (std::size_t i = 0; i < k; ++i) {
    std::int64_t pw = 1;
    for (std::size_t j = 0; j < k; ++j, pw = pw * static_cast<std::int64_t>(i) % p) a[i][j] = pw;
    a[i][k] = modp(vals[i], p);
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    const std::int64_t inv = inv_mod(a[c][c], p);
    for (auto& x : a[c]) x = x * inv % p;
    for (std::size_t r = 0; r < k; ++r)
      if (r != c && a[r][c]) {
        const std::int64_t f = a[r][c];
        for (std::size_t j = c; j <= k; ++j) a[r][j] = modp(a[r][j] - f * a[c][j], p);
      }
  }
  Dense out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = a[i][k];
  return out;
}

}  // namespace oracle
