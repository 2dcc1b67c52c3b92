#include "wadgeforge/ordinal.hpp"

#include "wadgeforge/error.hpp"

#include <limits>

namespace wadgeforge {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b)
    throw Error("ordinal coefficient overflow");
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
    throw Error("ordinal coefficient overflow");
  return a * b;
}

Head pow_head(Ordinal exponent) {
  Head h;
  h.exponent = std::make_shared<const Ordinal>(std::move(exponent));
  return h;
}

Head eps_head(std::uint32_t i) {
  Head h;
  h.is_eps = true;
  h.eps_index = i;
  return h;
}

bool head_is_unit(const Head& h) { return !h.is_eps && h.exponent->is_zero(); }

bool heads_equal(const Head& a, const Head& b) {
  if (a.is_eps != b.is_eps) return false;
  if (a.is_eps) return a.eps_index == b.eps_index;
  return *a.exponent == *b.exponent;
}

Head retag(const Head& h, Base base) {
  if (h.is_eps) return h;
  return pow_head(h.exponent->with_base(base));
}

void require_same_base(const Ordinal& a, const Ordinal& b) {
  if (a.base() != b.base()) throw BaseMismatch();
}

} // namespace

Ordinal from_terms(Base base, std::vector<Term> terms) {
  Ordinal out(base);
  for (auto& t : terms) {
    if (t.coeff == 0) throw PreconditionError("zero coefficient in normal form");
    if (!t.head.is_eps) {
      if (!t.head.exponent) throw PreconditionError("missing exponent");
      if (t.head.exponent->base() != base) throw BaseMismatch();
      if (t.head.exponent->is_epsilon()) t.head = eps_head(t.head.exponent->terms()[0].head.eps_index);
    }
  }
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (compare_heads(terms[i - 1].head, terms[i].head) != std::strong_ordering::greater)
      throw PreconditionError("terms are not in strictly decreasing order");
  }
  out.terms_ = std::move(terms);
  return out;
}

Ordinal Ordinal::finite(std::uint64_t n, Base base) {
  if (n == 0) return Ordinal(base);
  return from_terms(base, {Term{pow_head(Ordinal(base)), n}});
}

Ordinal Ordinal::omega(Base base) {
  return from_terms(base, {Term{pow_head(finite(1, base)), 1}});
}

Ordinal Ordinal::epsilon(std::uint32_t index, Base base) {
  return from_terms(base, {Term{eps_head(index), 1}});
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && head_is_unit(terms_[0].head));
}

std::uint64_t Ordinal::finite_value() const {
  if (!is_finite()) throw PreconditionError("ordinal is not finite");
  return terms_.empty() ? 0 : terms_[0].coeff;
}

bool Ordinal::is_successor() const {
  return !terms_.empty() && head_is_unit(terms_.back().head);
}

bool Ordinal::is_epsilon() const {
  return terms_.size() == 1 && terms_[0].head.is_eps && terms_[0].coeff == 1;
}

std::pair<Ordinal, std::uint64_t> Ordinal::split_finite() const {
  if (!is_successor()) return {*this, 0};
  Ordinal limit = *this;
  std::uint64_t n = limit.terms_.back().coeff;
  limit.terms_.pop_back();
  return {std::move(limit), n};
}

Ordinal Ordinal::with_base(Base base) const {
  Ordinal out(base);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back(Term{retag(t.head, base), t.coeff});
  return out;
}

bool operator==(const Ordinal& a, const Ordinal& b) {
  if (a.base_ != b.base_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
    if (!heads_equal(a.terms_[i].head, b.terms_[i].head)) return false;
  }
  return true;
}

std::strong_ordering compare_heads(const Head& a, const Head& b) {
  if (a.is_eps && b.is_eps) return a.eps_index <=> b.eps_index;
  if (!a.is_eps && !b.is_eps) return compare(*a.exponent, *b.exponent);
  // base^e against eps_i: base^e < eps_i iff e < eps_i (e is never eps_i).
  if (a.is_eps) {
    auto c = compare(*b.exponent, Ordinal::epsilon(a.eps_index, b.exponent->base()));
    return 0 <=> c;
  }
  return compare(*a.exponent, Ordinal::epsilon(b.eps_index, a.exponent->base()));
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) {
  require_same_base(a, b);
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (auto c = compare_heads(x[i].head, y[i].head); c != 0) return c;
    if (auto c = x[i].coeff <=> y[i].coeff; c != 0) return c;
  }
  return x.size() <=> y.size();
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
  require_same_base(a, b);
  if (b.is_zero()) return a;
  const Head& lead = b.terms_[0].head;
  Ordinal out(a.base_);
  std::uint64_t carry = 0;
  for (const auto& t : a.terms_) {
    auto c = compare_heads(t.head, lead);
    if (c == std::strong_ordering::greater) {
      out.terms_.push_back(t);
    } else {
      if (c == 0) carry = t.coeff;
      break;
    }
  }
  for (std::size_t i = 0; i < b.terms_.size(); ++i) {
    Term t = b.terms_[i];
    if (i == 0) t.coeff = checked_add(t.coeff, carry);
    out.terms_.push_back(std::move(t));
  }
  return out;
}

Ordinal mul_nat(const Ordinal& a, std::uint64_t m) {
  if (m == 0) throw PreconditionError("mul_nat requires a positive multiplier");
  Ordinal out = a;
  if (!out.terms_.empty()) out.terms_[0].coeff = checked_mul(out.terms_[0].coeff, m);
  return out;
}

Ordinal base_pow(const Ordinal& exponent) {
  const Base base = exponent.base();
  if (exponent.is_zero()) return Ordinal::finite(1, base);
  if (exponent.is_epsilon()) return exponent;
  Ordinal out(base);
  out.terms_.push_back(Term{pow_head(exponent), 1});
  return out;
}

Ordinal predecessor(const Ordinal& a) {
  if (!a.is_successor()) throw PreconditionError("predecessor of a non-successor ordinal");
  auto terms = a.terms();
  if (--terms.back().coeff == 0) terms.pop_back();
  return from_terms(a.base(), std::move(terms));
}

Cofinality cofinality(const Ordinal& a) {
  if (a.is_zero()) return Cofinality::Zero;
  if (a.is_successor()) return Cofinality::One;
  const Head& last = a.terms().back().head;
  if (last.is_eps || a.base() == Base::Omega) return Cofinality::Omega;
  const Ordinal& e = *last.exponent;
  if (e.is_successor()) return Cofinality::Omega1;
  return cofinality(e);
}

bool is_fixed_point(const Ordinal& a) { return a.is_epsilon(); }

namespace {

Ordinal least_fixed_point_at_least(const Ordinal& a) {
  if (a.is_zero()) return Ordinal::epsilon(0, a.base());
  const Head& lead = a.terms()[0].head;
  if (lead.is_eps) {
    if (a.is_epsilon()) return a;
    return Ordinal::epsilon(lead.eps_index + 1, a.base());
  }
  // a < base^(e+1), and the least eps >= e is strictly above e.
  return least_fixed_point_at_least(*lead.exponent);
}

} // namespace

Ordinal next_fixed_point(const Ordinal& a, bool strict) {
  Ordinal r = least_fixed_point_at_least(a);
  if (strict && r == a) return Ordinal::epsilon(r.terms()[0].head.eps_index + 1, a.base());
  return r;
}

namespace {

Ordinal h_map_or_zero(const Ordinal& a) {
  if (a.is_zero()) return Ordinal::zero(Base::Omega1);
  return h_map(a);
}

bool needs_shift(const Ordinal& limit_part) {
  return !limit_part.is_zero() && cofinality(limit_part) == Cofinality::Omega &&
         !limit_part.is_epsilon();
}

} // namespace

Ordinal h_prime(const Ordinal& a) {
  if (a.base() != Base::Omega) throw BaseMismatch();
  if (a.is_zero()) throw PreconditionError("H' is defined for non-null ordinals only");
  std::vector<Term> terms;
  terms.reserve(a.terms().size());
  for (const auto& t : a.terms()) {
    if (t.head.is_eps) {
      terms.push_back(Term{t.head, t.coeff});
    } else {
      Ordinal image = h_map_or_zero(*t.head.exponent);
      terms.push_back(Term{pow_head(std::move(image)), t.coeff});
    }
  }
  return from_terms(Base::Omega1, std::move(terms));
}

Ordinal h_map(const Ordinal& a) {
  if (a.base() != Base::Omega) throw BaseMismatch();
  if (a.is_zero()) throw PreconditionError("H is defined for non-null ordinals only");
  if (a.is_finite()) return a.with_base(Base::Omega1);
  Ordinal hp = h_prime(a);
  if (needs_shift(hp.split_finite().first)) return hp + Ordinal::finite(1, Base::Omega1);
  return hp;
}

std::optional<Ordinal> h_preimage(const Ordinal& d) {
  if (d.base() != Base::Omega1) throw BaseMismatch();
  if (d.is_zero()) throw PreconditionError("H preimage requires a non-null ordinal");
  if (d.is_finite()) return d.with_base(Base::Omega);
  auto [limit, n] = d.split_finite();
  Ordinal candidate = d;
  if (needs_shift(limit)) {
    if (n == 0) return std::nullopt;
    candidate = predecessor(d);
  }
  std::vector<Term> terms;
  for (const auto& t : candidate.terms()) {
    if (t.head.is_eps) {
      terms.push_back(t);
      continue;
    }
    const Ordinal& e = *t.head.exponent;
    if (e.is_zero()) {
      terms.push_back(Term{pow_head(Ordinal::zero(Base::Omega)), t.coeff});
      continue;
    }
    auto pre = h_preimage(e);
    if (!pre) return std::nullopt;
    terms.push_back(Term{pow_head(std::move(*pre)), t.coeff});
  }
  Ordinal alpha(Base::Omega);
  try {
    alpha = from_terms(Base::Omega, std::move(terms));
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
  if (!(h_map(alpha) == d)) return std::nullopt;
  return alpha;
}

std::string to_string(Cofinality c) {
  switch (c) {
    case Cofinality::Zero: return "0";
    case Cofinality::One: return "1";
    case Cofinality::Omega: return "omega";
    case Cofinality::Omega1: return "omega1";
  }
  return "?";
}

} // namespace wadgeforge
