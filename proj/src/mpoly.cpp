#include "polyprg/mpoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "polyprg/matrix.hpp"
#include "polyprg/upoly.hpp"

namespace polyprg {

Var Var::x(unsigned i) {
  if (i < 1 || i > kMaxXVars) throw PreconditionError("x-variable index out of range");
  return Var(i);
}

unsigned Var::shift() const { return slot_ == kT ? 0u : 48u - 8u * slot_; }

Monomial Monomial::of(Var v, unsigned e) {
  if (e > 255) throw BudgetError("exponent exceeds 255");
  return Monomial((std::uint64_t{e} << 56) | (std::uint64_t{e} << v.shift()));
}

Monomial Monomial::with(Var v, unsigned e) const {
  const unsigned old = exp(v);
  const unsigned tot = total() - old + e;
  if (tot > 255) throw BudgetError("degree exceeds 255");
  std::uint64_t b = bits_ & ~(std::uint64_t{0xff} << v.shift()) & ~(std::uint64_t{0xff} << 56);
  return Monomial(b | (std::uint64_t{e} << v.shift()) | (std::uint64_t{tot} << 56));
}

Monomial Monomial::operator*(Monomial o) const {
  if (total() + o.total() > 255) throw BudgetError("degree exceeds 255");
  return Monomial(bits_ + o.bits_);
}

bool Monomial::divides(Monomial o) const {
  for (unsigned s = 0; s < 56; s += 8) {
    if (((bits_ >> s) & 0xff) > ((o.bits_ >> s) & 0xff)) return false;
  }
  return true;
}

Monomial Monomial::operator/(Monomial o) const { return Monomial(bits_ - o.bits_); }

MPoly::MPoly(Field field, unsigned nvars) : field_(std::move(field)), nvars_(nvars) {
  if (nvars_ > kMaxXVars) throw PreconditionError("at most 5 x-variables are supported");
}

MPoly MPoly::constant(Field field, unsigned nvars, FieldElem c) {
  MPoly r(std::move(field), nvars);
  if (!c.is_zero()) r.terms_.push_back({Monomial{}, c.index()});
  return r;
}

MPoly MPoly::constant(Field field, unsigned nvars, std::int64_t c) {
  const FieldElem e = field->from_int(c);
  return constant(std::move(field), nvars, e);
}

MPoly MPoly::variable(Field field, unsigned nvars, Var v) {
  if (v.is_x() && v.x_index() > nvars) throw PreconditionError("variable beyond polynomial arity");
  MPoly r(std::move(field), nvars);
  r.terms_.push_back({Monomial::of(v, 1), 1});
  return r;
}

MPoly MPoly::monomial(Field field, unsigned nvars, Monomial m, FieldElem c) {
  MPoly r(std::move(field), nvars);
  if (!c.is_zero()) r.terms_.push_back({m, c.index()});
  return r;
}

MPoly MPoly::from_terms(Field field, unsigned nvars, std::vector<Term> terms) {
  MPoly r(std::move(field), nvars);
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  const FieldCtx& f = *r.field_;
  for (const auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().mono == t.mono) {
      r.terms_.back().coeff = f.add(r.terms_.back().coeff, t.coeff);
      if (r.terms_.back().coeff == 0) r.terms_.pop_back();
    } else if (t.coeff != 0) {
      r.terms_.push_back(t);
    }
  }
  return r;
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == Monomial{});
}

int MPoly::total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_[0].mono.total()); }

int MPoly::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.degree_xy()));
  return d;
}

int MPoly::degree(Var v) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.exp(v)));
  return d;
}

FieldElem MPoly::coeff(Monomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Monomial key) { return t.mono > key; });
  if (it != terms_.end() && it->mono == m) return field_->elem(it->coeff);
  return field_->zero();
}

MPoly MPoly::coeff_of(Var v, unsigned e) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono.exp(v) == e) out.push_back({t.mono.with(v, 0), t.coeff});
  }
  return from_terms(field_, nvars_, std::move(out));
}

FieldElem MPoly::lead_coeff() const {
  return terms_.empty() ? field_->zero() : field_->elem(terms_[0].coeff);
}

void MPoly::check_compatible(const MPoly& o) const {
  if (field_ != o.field_) throw PreconditionError("polynomials over different fields");
  if (nvars_ != o.nvars_) throw PreconditionError("polynomials with different arity");
}

MPoly MPoly::operator+(const MPoly& o) const {
  check_compatible(o);
  MPoly r(field_, nvars_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  const FieldCtx& f = *field_;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].mono > o.terms_[j].mono)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].mono > terms_[i].mono) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      const std::uint32_t c = f.add(terms_[i].coeff, o.terms_[j].coeff);
      if (c != 0) r.terms_.push_back({terms_[i].mono, c});
      ++i;
      ++j;
    }
  }
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.coeff = field_->neg(t.coeff);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  check_compatible(o);
  if (is_zero() || o.is_zero()) return MPoly(field_, nvars_);
  const FieldCtx& f = *field_;
  if (o.is_constant()) return *this * f.elem(o.terms_[0].coeff);
  if (is_constant()) return o * f.elem(terms_[0].coeff);
  std::vector<Term> prods;
  prods.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) prods.push_back({a.mono * b.mono, f.mul(a.coeff, b.coeff)});
  }
  return from_terms(field_, nvars_, std::move(prods));
}

MPoly MPoly::operator*(FieldElem c) const {
  if (c.is_zero()) return MPoly(field_, nvars_);
  MPoly r = *this;
  for (auto& t : r.terms_) t.coeff = field_->mul(t.coeff, c.index());
  return r;
}

MPoly operator*(FieldElem c, const MPoly& f) { return f * c; }

MPoly MPoly::pow(unsigned e) const {
  MPoly result = one();
  MPoly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

FieldElem MPoly::eval(std::span<const FieldElem> point) const {
  const bool has_t = std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.mono.exp(Var::t()) > 0; });
  if (point.size() != nvars_ + 1 && point.size() != nvars_ + 2) {
    throw PreconditionError("eval: point arity " + std::to_string(point.size()) + " does not match " +
                            std::to_string(nvars_ + 1));
  }
  if (has_t && point.size() != nvars_ + 2) throw PreconditionError("eval: polynomial contains t but no value given");
  const FieldCtx& f = *field_;
  std::vector<std::uint32_t> vals(nvars_ + 2, 0);
  for (std::size_t i = 0; i < point.size(); ++i) vals[i] = embed(point[i], f).index();
  std::uint32_t acc = 0;
  for (const auto& t : terms_) {
    std::uint32_t v = t.coeff;
    for (unsigned i = 1; i <= nvars_; ++i) {
      const unsigned e = t.mono.exp(Var::x(i));
      if (e) v = f.mul(v, f.pow(vals[i - 1], e));
    }
    if (unsigned e = t.mono.exp(Var::y())) v = f.mul(v, f.pow(vals[nvars_], e));
    if (unsigned e = t.mono.exp(Var::t())) v = f.mul(v, f.pow(vals[nvars_ + 1], e));
    acc = f.add(acc, v);
  }
  return f.elem(acc);
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.terms_.empty()) return true;
  if (a.field_ != b.field_) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

MPoly compose(const MPoly& f, std::span<const MPoly> images) {
  const unsigned n = f.nvars();
  if (images.size() != n + 1 && images.size() != n + 2) throw PreconditionError("compose: image count mismatch");
  const MPoly& proto = images[0];
  const bool map_t = images.size() == n + 2;
  // Cached powers of each image, indexed [slot][exponent].
  std::vector<std::vector<MPoly>> powers(images.size());
  auto power = [&](std::size_t slot, unsigned e) -> const MPoly& {
    auto& cache = powers[slot];
    if (cache.empty()) cache.push_back(proto.one());
    while (cache.size() <= e) cache.push_back(cache.back() * images[slot]);
    return cache[e];
  };
  std::vector<Term> acc;
  for (const auto& t : f.terms()) {
    MPoly term = MPoly::constant(proto.field(), proto.nvars(), embed(f.ctx().elem(t.coeff), proto.ctx()));
    for (unsigned i = 1; i <= n; ++i) {
      if (unsigned e = t.mono.exp(Var::x(i))) term = term * power(i - 1, e);
    }
    if (unsigned e = t.mono.exp(Var::y())) term = term * power(n, e);
    if (unsigned e = t.mono.exp(Var::t())) {
      if (map_t) {
        term = term * power(n + 1, e);
      } else {
        term = term * MPoly::monomial(proto.field(), proto.nvars(), Monomial::of(Var::t(), e), proto.ctx().one());
      }
    }
    acc.insert(acc.end(), term.terms().begin(), term.terms().end());
  }
  return MPoly::from_terms(proto.field(), proto.nvars(), std::move(acc));
}

MPoly shear(const MPoly& f, std::span<const FieldElem> a) {
  const unsigned n = f.nvars();
  if (a.size() != n) throw PreconditionError("shear: vector arity mismatch");
  const MPoly y = MPoly::variable(f.field(), n, Var::y());
  std::vector<MPoly> images;
  for (unsigned i = 1; i <= n; ++i) {
    images.push_back(MPoly::variable(f.field(), n, Var::x(i)) + y * embed(a[i - 1], f.ctx()));
  }
  images.push_back(y);
  return compose(f, images);
}

MPoly plane_restrict(const MPoly& f, std::span<const FieldElem> a, std::span<const FieldElem> b) {
  const unsigned n = f.nvars();
  if (a.size() != n || b.size() != n) throw PreconditionError("plane_restrict: vector arity mismatch");
  const MPoly x = MPoly::variable(f.field(), 1, Var::x(1));
  const MPoly y = MPoly::variable(f.field(), 1, Var::y());
  std::vector<MPoly> images;
  for (unsigned i = 0; i < n; ++i) images.push_back(x * embed(b[i], f.ctx()) + y * embed(a[i], f.ctx()));
  images.push_back(y);
  return compose(f, images);
}

MPoly line_restrict(const MPoly& f, std::span<const FieldElem> a) {
  const unsigned n = f.nvars();
  if (a.size() != n) throw PreconditionError("line_restrict: vector arity mismatch");
  const MPoly x = MPoly::variable(f.field(), 1, Var::x(1));
  std::vector<MPoly> images;
  for (unsigned i = 0; i < n; ++i) images.push_back(x * embed(a[i], f.ctx()));
  images.push_back(MPoly::variable(f.field(), 1, Var::y()));
  return compose(f, images);
}

MPoly partial(const MPoly& f, Var v) {
  std::vector<Term> out;
  const FieldCtx& ctx = f.ctx();
  for (const auto& t : f.terms()) {
    const unsigned e = t.mono.exp(v);
    if (e == 0) continue;
    const std::uint32_t c = ctx.mul(t.coeff, ctx.from_int(e).index());
    if (c != 0) out.push_back({t.mono.with(v, e - 1), c});
  }
  return MPoly::from_terms(f.field(), f.nvars(), std::move(out));
}

MPoly homog_part(const MPoly& f, int d) {
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    if (static_cast<int>(t.mono.degree_xy()) == d) out.push_back(t);
  }
  return MPoly::from_terms(f.field(), f.nvars(), std::move(out));
}

MPoly assign(const MPoly& f, Var v, FieldElem c) {
  const FieldCtx& ctx = f.ctx();
  const FieldElem cv = embed(c, ctx);
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    const unsigned e = t.mono.exp(v);
    out.push_back({t.mono.with(v, 0), ctx.mul(t.coeff, ctx.pow(cv.index(), e))});
  }
  return MPoly::from_terms(f.field(), f.nvars(), std::move(out));
}

MPoly swap_vars(const MPoly& f, Var a, Var b) {
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    const unsigned ea = t.mono.exp(a), eb = t.mono.exp(b);
    out.push_back({t.mono.with(a, eb).with(b, ea), t.coeff});
  }
  return MPoly::from_terms(f.field(), f.nvars(), std::move(out));
}

MPoly change_field(const MPoly& f, const Field& target) {
  if (f.field() == target) return f;
  std::vector<Term> out;
  for (const auto& t : f.terms()) out.push_back({t.mono, embed(f.ctx().elem(t.coeff), *target).index()});
  return MPoly::from_terms(target, f.nvars(), std::move(out));
}

namespace {

// y-coefficients of a polynomial in y and t, each as a dense polynomial in t.
std::vector<UPoly> y_coeffs_over_t(const MPoly& f) {
  const int dy = f.degree(Var::y());
  std::vector<std::vector<std::uint32_t>> dense(std::max(dy, 0) + 1);
  for (const auto& t : f.terms()) {
    if (t.mono.total() != t.mono.exp(Var::y()) + t.mono.exp(Var::t())) {
      throw PreconditionError("resultant_y: inputs may only involve y and t");
    }
    auto& c = dense[t.mono.exp(Var::y())];
    const unsigned et = t.mono.exp(Var::t());
    if (c.size() <= et) c.resize(et + 1, 0);
    c[et] = t.coeff;
  }
  std::vector<UPoly> out;
  for (auto& c : dense) out.emplace_back(&f.ctx(), std::move(c));
  return out;
}

}  // namespace

MPoly resultant_y(const MPoly& f, const MPoly& g) {
  if (f.field() != g.field()) throw PreconditionError("resultant_y: different fields");
  const int d1 = f.degree(Var::y());
  const int d2 = g.degree(Var::y());
  if (f.is_zero() || g.is_zero()) {
    if (std::max(d1, d2) <= 0) throw PreconditionError("resultant_y: both inputs constant");
    return MPoly(f.field(), f.nvars());
  }
  if (d1 + d2 <= 0) throw PreconditionError("resultant_y: both inputs constant");
  const auto a = y_coeffs_over_t(f);
  const auto b = y_coeffs_over_t(g);
  const FieldCtx* ctx = &f.ctx();
  const UPoly zero(ctx, {});
  const UPoly one = UPoly::constant(ctx, 1);
  const UPoly det = determinant_bareiss(sylvester_matrix<UPoly>(a, b, zero), one);
  std::vector<Term> out;
  for (std::size_t i = 0; i < det.coeffs().size(); ++i) {
    if (det[i]) out.push_back({Monomial::of(Var::t(), static_cast<unsigned>(i)), det[i]});
  }
  return MPoly::from_terms(f.field(), f.nvars(), std::move(out));
}

std::optional<MPoly> exact_divide(const MPoly& f, const MPoly& g) {
  if (g.is_zero()) throw PreconditionError("exact_divide: zero divisor");
  if (f.field() != g.field() || f.nvars() != g.nvars()) throw PreconditionError("exact_divide: incompatible inputs");
  const int dg = g.degree(Var::y());
  const MPoly lc = g.coeff_of(Var::y(), static_cast<unsigned>(dg));
  if (!(lc.is_constant() && lc.constant_term().is_one())) {
    throw PreconditionError("exact_divide: divisor must be monic in y");
  }
  MPoly q = f.zero();
  MPoly r = f;
  while (!r.is_zero()) {
    const int dr = r.degree(Var::y());
    if (dr < dg) return std::nullopt;
    const MPoly lead = r.coeff_of(Var::y(), static_cast<unsigned>(dr));
    const MPoly step = lead * MPoly::monomial(f.field(), f.nvars(), Monomial::of(Var::y(), dr - dg), f.ctx().one());
    q += step;
    r -= step * g;
  }
  if (!(q * g == f)) throw ConsistencyError("exact_divide: re-multiplication check failed");
  return q;
}

std::string to_string(const MPoly& f, char xname) {
  if (f.is_zero()) return "0";
  const FieldCtx& ctx = f.ctx();
  std::ostringstream os;
  bool first = true;
  for (const auto& t : f.terms()) {
    std::uint32_t c = t.coeff;
    bool negative = false;
    if (ctx.k() == 1 && c > ctx.p() / 2) {
      negative = true;
      c = ctx.p() - c;
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    for (unsigned i = 1; i <= f.nvars(); ++i) {
      const unsigned e = t.mono.exp(Var::x(i));
      if (e) factors.push_back(std::string(1, xname) + std::to_string(i) + (e > 1 ? "^" + std::to_string(e) : ""));
    }
    for (auto [v, name] : {std::pair{Var::y(), "y"}, std::pair{Var::t(), "t"}}) {
      const unsigned e = t.mono.exp(v);
      if (e) factors.push_back(std::string(name) + (e > 1 ? "^" + std::to_string(e) : ""));
    }
    std::string coeff;
    if (c >= ctx.p()) {
      coeff = "(" + ctx.to_string(c) + ")";
    } else if (c != 1 || factors.empty()) {
      coeff = std::to_string(c);
    }
    bool need_star = false;
    if (!coeff.empty()) {
      os << coeff;
      need_star = true;
    }
    for (const auto& fac : factors) {
      if (need_star) os << '*';
      os << fac;
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace polyprg
