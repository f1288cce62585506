#include "polyprg/field.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "polyprg/mpoly.hpp"

namespace polyprg {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Remainder of a modulo a monic b, dense over F_p, low degree first.
std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a, std::span<const std::uint32_t> b,
                                    std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint64_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) {
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * b[i]) % p);
      }
    }
    a.pop_back();
  }
  return a;
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<std::uint64_t, unsigned>, Field> fields;
  std::map<std::pair<const FieldCtx*, const FieldCtx*>, std::vector<std::uint32_t>> embeddings;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible_mod_p(std::span<const std::uint32_t> poly, std::uint32_t p) {
  const unsigned k = static_cast<unsigned>(poly.size()) - 1;
  if (k <= 1) return k == 1;
  for (unsigned e = 1; e <= k / 2; ++e) {
    const std::uint64_t count = ipow(p, e);
    std::vector<std::uint32_t> div(e + 1);
    div[e] = 1;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (unsigned i = 0; i < e; ++i) {
        div[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      auto r = poly_mod({poly.begin(), poly.end()}, div, p);
      if (std::all_of(r.begin(), r.end(), [](std::uint32_t v) { return v == 0; })) return false;
    }
  }
  return true;
}

FieldCtx::FieldCtx(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), q_(static_cast<std::uint32_t>(ipow(p, k))), modulus_(std::move(modulus)) {
  pow_p_.resize(k_ + 1);
  pow_p_[0] = 1;
  for (unsigned i = 1; i <= k_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;
  build_tables();
}

std::uint32_t FieldCtx::slow_mul(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  std::vector<std::uint32_t> da(k_), db(k_);
  for (unsigned i = 0; i < k_; ++i) {
    da[i] = a % p_;
    a /= p_;
    db[i] = b % p_;
    b /= p_;
  }
  std::vector<std::uint32_t> prod(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    for (unsigned j = 0; j < k_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_);
    }
  }
  auto r = poly_mod(std::move(prod), modulus_, p_);
  std::uint32_t out = 0;
  for (unsigned i = r.size(); i-- > 0;) out = out * p_ + r[i];
  return out;
}

void FieldCtx::build_tables() {
  const std::uint32_t order = q_ - 1;
  const auto factors = prime_factors(order);
  auto slow_pow = [&](std::uint32_t a, std::uint64_t e) {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  std::uint32_t g = 0;
  for (std::uint32_t cand = 1; cand < q_ && g == 0; ++cand) {
    bool primitive = true;
    for (auto r : factors) {
      if (slow_pow(cand, order / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) g = cand;
  }
  if (g == 0) throw ConsistencyError("no primitive element found in F_" + descriptor());
  exp_.resize(2 * std::size_t{order});
  log_.assign(q_, 0);
  std::uint32_t acc = 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    exp_[i] = acc;
    exp_[i + order] = acc;
    log_[acc] = i;
    acc = slow_mul(acc, g);
  }
  if (k_ > 1) {
    zech_.resize(order);
    for (std::uint32_t i = 0; i < order; ++i) {
      // exp_[i] + 1 only touches coefficient 0.
      const std::uint32_t v = exp_[i];
      const std::uint32_t c0 = v % p_;
      const std::uint32_t s = v - c0 + (c0 + 1) % p_;
      zech_[i] = s == 0 ? -1 : static_cast<std::int64_t>(log_[s]);
    }
  }
}

std::uint32_t FieldCtx::add(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint32_t order = q_ - 1;
  const std::uint32_t la = log_[a];
  const std::uint32_t lb = log_[b];
  const std::uint32_t diff = lb >= la ? lb - la : lb + order - la;
  const std::int64_t z = zech_[diff];
  if (z < 0) return 0;
  return exp_[la + static_cast<std::uint32_t>(z)];
}

std::uint32_t FieldCtx::neg(std::uint32_t a) const {
  if (a == 0) return 0;
  if (k_ == 1) return p_ - a;
  if (p_ == 2) return a;
  return exp_[log_[a] + (q_ - 1) / 2];
}

std::uint32_t FieldCtx::inv(std::uint32_t a) const {
  if (a == 0) throw PreconditionError("inverse of zero in F_" + descriptor());
  const std::uint32_t order = q_ - 1;
  return exp_[(order - log_[a]) % order];
}

std::uint32_t FieldCtx::pow(std::uint32_t a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t order = q_ - 1;
  return exp_[static_cast<std::size_t>((std::uint64_t{log_[a]} * (e % order)) % order)];
}

FieldElem FieldCtx::elem(std::uint32_t index) const {
  if (index >= q_) throw PreconditionError("element index out of range");
  return {this, index};
}

FieldElem FieldCtx::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {this, static_cast<std::uint32_t>(r)};
}

FieldElem FieldCtx::gen() const { return {this, k_ == 1 ? 1u : p_}; }

std::string FieldCtx::to_string(std::uint32_t a) const {
  if (k_ == 1) return std::to_string(a);
  std::vector<std::uint32_t> c(k_);
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  std::ostringstream os;
  bool first = true;
  for (unsigned i = k_; i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c[i];
    } else {
      if (c[i] != 1) os << c[i] << '*';
      os << 'w';
      if (i > 1) os << '^' << i;
    }
  }
  if (first) os << '0';
  return os.str();
}

std::string FieldCtx::descriptor() const {
  return k_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(k_);
}

FieldElem FieldElem::operator+(FieldElem o) const { return {ctx_, ctx_->add(v_, o.v_)}; }
FieldElem FieldElem::operator-(FieldElem o) const { return {ctx_, ctx_->sub(v_, o.v_)}; }
FieldElem FieldElem::operator*(FieldElem o) const { return {ctx_, ctx_->mul(v_, o.v_)}; }
FieldElem FieldElem::operator/(FieldElem o) const { return {ctx_, ctx_->mul(v_, ctx_->inv(o.v_))}; }
FieldElem FieldElem::operator-() const { return {ctx_, ctx_->neg(v_)}; }
FieldElem FieldElem::inv() const { return {ctx_, ctx_->inv(v_)}; }
FieldElem FieldElem::pow(std::uint64_t e) const { return {ctx_, ctx_->pow(v_, e)}; }

std::vector<std::uint32_t> FieldElem::coeffs() const {
  std::vector<std::uint32_t> c(ctx_->k());
  std::uint32_t a = v_;
  for (auto& ci : c) {
    ci = a % ctx_->p();
    a /= ctx_->p();
  }
  return c;
}

std::string FieldElem::to_string() const { return ctx_ ? ctx_->to_string(v_) : "<null>"; }

Field FieldCtx::prime(std::uint64_t p) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  return extension(p, 1);
}

Field FieldCtx::extension(std::uint64_t p, unsigned k) {
  if (k == 0) throw PreconditionError("extension degree must be >= 1");
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > kFieldSizeBudget) {
      throw BudgetError("F_" + std::to_string(p) + "^" + std::to_string(k) + " exceeds the field size budget");
    }
  }
  auto& reg = registry();
  {
    std::lock_guard lock(reg.mu);
    auto it = reg.fields.find({p, k});
    if (it != reg.fields.end()) return it->second;
  }
  std::vector<std::uint32_t> modulus;
  if (k > 1) {
    // Tuples (c0, ..., c_{k-1}) in lexicographic order: c0 is the most
    // significant digit of the counter.
    std::vector<std::uint32_t> cand(k + 1);
    cand[k] = 1;
    for (std::uint64_t code = 0; code < q && modulus.empty(); ++code) {
      std::uint64_t c = code;
      for (unsigned i = k; i-- > 0;) {
        cand[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      if (is_irreducible_mod_p(cand, static_cast<std::uint32_t>(p))) modulus = cand;
    }
    if (modulus.empty()) throw BudgetError("no irreducible polynomial of degree " + std::to_string(k));
  }
  auto ctx = std::make_shared<const FieldCtx>(static_cast<std::uint32_t>(p), k, std::move(modulus));
  std::lock_guard lock(reg.mu);
  auto [it, inserted] = reg.fields.emplace(std::pair{p, k}, ctx);
  return it->second;
}

Field mk_prime_field(std::uint64_t p) { return FieldCtx::prime(p); }
Field mk_extension(std::uint64_t p, unsigned k) { return FieldCtx::extension(p, k); }

Field parse_field(std::string_view s) {
  auto parse_num = [&](std::string_view part) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
      throw PreconditionError("bad field descriptor '" + std::string(s) + "'");
    }
    return v;
  };
  const auto caret = s.find('^');
  if (caret == std::string_view::npos) return mk_prime_field(parse_num(s));
  return mk_extension(parse_num(s.substr(0, caret)), static_cast<unsigned>(parse_num(s.substr(caret + 1))));
}

bool is_subfield(const FieldCtx& small, const FieldCtx& big) {
  return small.p() == big.p() && big.k() % small.k() == 0;
}

FieldElem embed(FieldElem a, const FieldCtx& target) {
  const FieldCtx& src = *a.ctx();
  if (&src == &target) return a;
  if (!is_subfield(src, target)) {
    throw PreconditionError("F_" + target.descriptor() + " is not an extension of F_" + src.descriptor());
  }
  if (src.k() == 1) return {&target, a.index()};
  auto& reg = registry();
  const std::vector<std::uint32_t>* table = nullptr;
  {
    std::lock_guard lock(reg.mu);
    auto it = reg.embeddings.find({&src, &target});
    if (it != reg.embeddings.end()) table = &it->second;
  }
  if (!table) {
    const auto mod = src.modulus();
    std::uint32_t alpha = 0;
    bool found = false;
    for (std::uint32_t x = 0; x < target.size() && !found; ++x) {
      std::uint32_t acc = 0;
      for (std::size_t i = mod.size(); i-- > 0;) acc = target.add(target.mul(acc, x), mod[i]);
      if (acc == 0) {
        alpha = x;
        found = true;
      }
    }
    if (!found) throw ConsistencyError("source modulus has no root in the target field");
    std::vector<std::uint32_t> powers(src.k());
    powers[0] = 1;
    for (unsigned i = 1; i < src.k(); ++i) powers[i] = target.mul(powers[i - 1], alpha);
    std::vector<std::uint32_t> map(src.size());
    for (std::uint32_t v = 0; v < src.size(); ++v) {
      std::uint32_t rest = v, img = 0;
      for (unsigned i = 0; i < src.k(); ++i) {
        img = target.add(img, target.mul(rest % src.p(), powers[i]));
        rest /= src.p();
      }
      map[v] = img;
    }
    std::lock_guard lock(reg.mu);
    auto [it, inserted] = reg.embeddings.emplace(std::pair{&src, &target}, std::move(map));
    table = &it->second;
  }
  return {&target, (*table)[a.index()]};
}

SplittingResult splitting_field(const MPoly& f, unsigned k_max) {
  if (f.is_zero()) throw PreconditionError("splitting_field: zero polynomial");
  for (const auto& t : f.terms()) {
    if (t.mono.total() != t.mono.exp(Var::y())) {
      throw PreconditionError("splitting_field: input must be univariate in y");
    }
  }
  const int deg = f.degree(Var::y());
  const FieldCtx& base = *f.field();
  if (deg == 0) return {f.field(), {}};
  if (!resultant_y(f, partial(f, Var::y())).is_nonzero_constant()) {
    throw PreconditionError("splitting_field: input is not squarefree");
  }
  std::vector<FieldElem> coeffs(deg + 1, base.zero());
  for (const auto& t : f.terms()) coeffs[t.mono.exp(Var::y())] = base.elem(t.coeff);
  for (unsigned kk = base.k(); kk <= k_max; kk += base.k()) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < kk; ++i) q *= base.p();
    if (q > kFieldSizeBudget) break;
    Field K = mk_extension(base.p(), kk);
    std::vector<std::uint32_t> c(deg + 1);
    for (int i = 0; i <= deg; ++i) c[i] = embed(coeffs[i], *K).index();
    std::vector<FieldElem> roots;
    for (std::uint32_t x = 0; x < K->size(); ++x) {
      std::uint32_t acc = 0;
      for (int i = deg; i >= 0; --i) acc = K->add(K->mul(acc, x), c[i]);
      if (acc == 0) roots.push_back(K->elem(x));
    }
    if (static_cast<int>(roots.size()) == deg) return {K, std::move(roots)};
  }
  throw BudgetError("splitting_field: no splitting field of degree <= " + std::to_string(k_max) +
                    " within the field size budget");
}

}  // namespace polyprg
