#include "polyprg/upoly.hpp"

#include <algorithm>

namespace polyprg {

UPoly::UPoly(const FieldCtx* ctx, std::vector<std::uint32_t> coeffs) : ctx_(ctx), c_(std::move(coeffs)) {
  trim();
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::operator+(const UPoly& o) const {
  const FieldCtx* f = ctx_ ? ctx_ : o.ctx_;
  std::vector<std::uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f->add((*this)[i], o[i]);
  return UPoly(f, std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const {
  const FieldCtx* f = ctx_ ? ctx_ : o.ctx_;
  std::vector<std::uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f->sub((*this)[i], o[i]);
  return UPoly(f, std::move(r));
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return UPoly(ctx_ ? ctx_ : o.ctx_, {});
  std::vector<std::uint32_t> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = ctx_->add(r[i + j], ctx_->mul(c_[i], o.c_[j]));
  }
  return UPoly(ctx_, std::move(r));
}

FieldElem UPoly::eval(FieldElem x) const {
  std::uint32_t acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = ctx_->add(ctx_->mul(acc, x.index()), c_[i]);
  return {ctx_, acc};
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) throw PreconditionError("UPoly division by zero");
  const FieldCtx* f = d.ctx_;
  std::vector<std::uint32_t> r = c_;
  if (r.size() < d.c_.size()) return {UPoly(f, {}), *this};
  std::vector<std::uint32_t> q(r.size() - d.c_.size() + 1, 0);
  const std::uint32_t lead_inv = f->inv(d.c_.back());
  for (std::size_t s = q.size(); s-- > 0;) {
    const std::uint32_t top = r[s + d.c_.size() - 1];
    if (top == 0) continue;
    const std::uint32_t factor = f->mul(top, lead_inv);
    q[s] = factor;
    for (std::size_t i = 0; i < d.c_.size(); ++i) r[s + i] = f->sub(r[s + i], f->mul(factor, d.c_[i]));
  }
  return {UPoly(f, std::move(q)), UPoly(f, std::move(r))};
}

UPoly exact_quotient(const UPoly& a, const UPoly& b) {
  auto [q, r] = a.divmod(b);
  if (!r.is_zero()) throw ConsistencyError("inexact division in F[t]");
  return q;
}

}  // namespace polyprg
