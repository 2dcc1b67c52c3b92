#include "wadgeforge/concil.hpp"

#include "wadgeforge/error.hpp"

#include <algorithm>
#include <charconv>

namespace wadgeforge {

namespace {

std::vector<Letter> merge(std::vector<Letter> a, const std::vector<Letter>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

bool contains(const std::vector<Letter>& sorted, const Letter& l) {
  return std::binary_search(sorted.begin(), sorted.end(), l);
}

// Largest k among letters named +k or -k.
unsigned max_sum_index(const std::vector<Letter>& alphabet) {
  unsigned best = 0;
  for (const auto& l : alphabet) {
    if (l.is_eraser() || l.name.size() < 2 || (l.name[0] != '+' && l.name[0] != '-')) continue;
    unsigned k = 0;
    auto [p, ec] = std::from_chars(l.name.data() + 1, l.name.data() + l.name.size(), k);
    if (ec == std::errc() && p == l.name.data() + l.name.size()) best = std::max(best, k);
  }
  return best;
}

unsigned max_eraser(const std::vector<Letter>& alphabet) {
  unsigned best = 0;
  for (const auto& l : alphabet) best = std::max(best, l.eraser);
  return best;
}

unsigned max_bullet_level(const ExprPtr& e) {
  if (!e) return 0;
  unsigned here = e->node == Node::Bullet ? e->level : 0;
  return std::max({here, max_bullet_level(e->base), max_bullet_level(e->small)});
}

std::shared_ptr<Expr> node(Node kind, ExprPtr base = nullptr) {
  auto e = std::make_shared<Expr>();
  e->node = kind;
  e->base = std::move(base);
  if (e->base) e->alphabet = e->base->alphabet;
  return e;
}

void require(const ExprPtr& e) {
  if (!e) throw PreconditionError("null expression operand");
}

} // namespace

std::string to_string(Membership m) {
  switch (m) {
    case Membership::Out: return "false";
    case Membership::In: return "true";
    case Membership::Unsupported: return "unsupported";
  }
  return "?";
}

ExprPtr make_empty() { return node(Node::Empty); }

ExprPtr make_atom(std::string id, AtomPtr lang, std::optional<Ordinal> degree) {
  if (degree && (degree->base() != Base::Omega1 || degree->is_zero()))
    throw PreconditionError("atom degree must be a non-null omega_1 ordinal");
  auto e = node(Node::Atom);
  e->atom_id = std::move(id);
  if (lang) e->alphabet = merge({}, lang->alphabet());
  e->lang = std::move(lang);
  e->degree_note = std::move(degree);
  return e;
}

ExprPtr make_sum(ExprPtr big, ExprPtr small, std::vector<Letter> plus, std::vector<Letter> minus) {
  require(big);
  require(small);
  const auto joint = merge(big->alphabet, small->alphabet);
  const unsigned k = max_sum_index(joint) + 1;
  if (plus.empty()) plus.push_back(Letter::plain("+" + std::to_string(k)));
  if (minus.empty()) minus.push_back(Letter::plain("-" + std::to_string(k)));
  plus = merge(std::move(plus), {});
  minus = merge(std::move(minus), {});
  for (const auto& l : plus) {
    if (l.is_eraser()) throw AlphabetError("sum letters must be plain");
    if (contains(small->alphabet, l)) throw AlphabetError("plus letter " + l.name + " is in the small alphabet");
    if (contains(minus, l)) throw AlphabetError("plus and minus letters overlap: " + l.name);
  }
  for (const auto& l : minus) {
    if (l.is_eraser()) throw AlphabetError("sum letters must be plain");
    if (contains(small->alphabet, l)) throw AlphabetError("minus letter " + l.name + " is in the small alphabet");
  }
  auto e = node(Node::Sum, big);
  e->small = std::move(small);
  e->alphabet = merge(merge(joint, plus), minus);
  e->plus = std::move(plus);
  e->minus = std::move(minus);
  return e;
}

ExprPtr make_scalar(ExprPtr base, std::uint64_t n) {
  require(base);
  if (n == 0) throw PreconditionError("scalar multiple needs n >= 1");
  ExprPtr chain = base;
  for (std::uint64_t i = 1; i < n; ++i) chain = make_sum(chain, base);
  auto e = node(Node::Scalar, base);
  e->times = n;
  e->unfolded = chain;
  e->alphabet = chain->alphabet;
  return e;
}

namespace {

ExprPtr make_eraser_node(Node kind, ExprPtr base) {
  require(base);
  auto e = node(kind, base);
  e->eraser = max_eraser(base->alphabet) + 1;
  e->alphabet = merge(e->alphabet, {Letter::erase(e->eraser)});
  return e;
}

} // namespace

ExprPtr make_tilde(ExprPtr base) { return make_eraser_node(Node::Tilde, std::move(base)); }

ExprPtr make_approx(ExprPtr base) { return make_eraser_node(Node::Approx, std::move(base)); }

ExprPtr make_bullet(ExprPtr base) {
  require(base);
  auto e = node(Node::Bullet, base);
  e->level = max_bullet_level(base) + 1;
  e->offset = max_eraser(base->alphabet);
  std::vector<Letter> markers;
  for (const auto& name : Markers::level(e->level).all()) {
    Letter l = Letter::plain(name);
    if (contains(base->alphabet, l)) throw AlphabetError("bullet marker " + name + " is not fresh");
    markers.push_back(l);
  }
  e->alphabet = merge(e->alphabet, markers);
  return e;
}

ExprPtr make_dflag(ExprPtr base, Letter d) {
  require(base);
  if (d.is_eraser() || d.name.empty()) throw AlphabetError("the d letter must be plain");
  if (contains(base->alphabet, d)) throw AlphabetError("letter " + d.name + " is not fresh");
  auto e = node(Node::DFlag, base);
  e->alphabet = merge(e->alphabet, {d});
  e->d = std::move(d);
  return e;
}

ExprPtr make_complement(ExprPtr base) {
  require(base);
  if (base->node == Node::Complement) return base->base;
  return node(Node::Complement, base);
}

Ordinal degree(const ExprPtr& e) {
  require(e);
  const Ordinal two = Ordinal::finite(2, Base::Omega1);
  switch (e->node) {
    case Node::Empty: return Ordinal::finite(1, Base::Omega1);
    case Node::Atom:
      if (!e->degree_note) throw UnknownDegree("atom " + e->atom_id + " has no degree annotation");
      return *e->degree_note;
    case Node::Sum: return degree(e->base) + degree(e->small);
    case Node::Scalar: return degree(e->base) * e->times;
    case Node::Tilde:
    case Node::Approx: {
      const Ordinal d = degree(e->base);
      if (d < two) throw PreconditionError("exponentiation needs an operand of degree >= 2");
      const Ordinal alpha = d.split_finite().first;
      if (alpha.is_zero()) return base_pow(predecessor(d));
      if (cofinality(alpha) == Cofinality::Omega) return base_pow(d + Ordinal::finite(1, Base::Omega1));
      return base_pow(d);
    }
    case Node::Bullet: {
      const Ordinal d = degree(e->base);
      if (d < two) throw PreconditionError("iterated exponentiation needs an operand of degree >= 2");
      return next_fixed_point(d, true);
    }
    case Node::DFlag:
    case Node::Complement: return degree(e->base);
  }
  throw Error("unknown expression node");
}

namespace {

ExprPtr omega_power(const Head& head) {
  if (head.is_eps) {
    ExprPtr e = make_sum(make_empty(), make_empty());
    for (std::uint32_t i = 0; i <= head.eps_index; ++i) e = make_bullet(e);
    return e;
  }
  const Ordinal& beta = *head.exponent;
  if (beta.is_zero()) return make_empty();
  if (beta.is_finite()) return make_tilde(build_omega(beta + Ordinal::finite(1, Base::Omega1)));
  const auto [gamma, n] = beta.split_finite();
  if (cofinality(gamma) == Cofinality::Omega1) return make_tilde(build_omega(beta));
  if (n == 0)
    throw CaseHError("exponent " + to_string(beta) +
                     " is a limit of countable cofinality and not an epsilon atom");
  return make_tilde(build_omega(predecessor(beta)));
}

} // namespace

ExprPtr build_omega(const Ordinal& d) {
  if (d.base() != Base::Omega1) throw BaseMismatch();
  if (d.is_zero()) throw PreconditionError("build_omega needs a non-null ordinal");
  ExprPtr out;
  for (const auto& t : d.terms()) {
    ExprPtr part = omega_power(t.head);
    if (t.coeff > 1) part = make_scalar(part, t.coeff);
    out = out ? make_sum(out, part) : part;
  }
  return out;
}

namespace {

class BulletDual : public AtomLanguage {
public:
  explicit BulletDual(ExprPtr bullet)
      : bullet_(std::move(bullet)), a_(Letter::plain(Markers::level(bullet_->level).a)) {}

  std::vector<Letter> alphabet() const override { return bullet_->alphabet; }

  Membership member(const Word& w) const override {
    auto only_a = [&](const LetterSeq& s) {
      return std::all_of(s.begin(), s.end(), [&](const Letter& l) { return l == a_; });
    };
    if (only_a(w.stem()) && only_a(w.period())) return Membership::In;
    return wadgeforge::member(bullet_, w);
  }

private:
  ExprPtr bullet_;
  Letter a_;
};

} // namespace

AtomPtr bullet_dual_language(const ExprPtr& bullet) {
  require(bullet);
  if (bullet->node != Node::Bullet) throw PreconditionError("bullet_dual_language needs a bullet");
  return std::make_shared<BulletDual>(bullet);
}

ExprPtr complement_witness(const ExprPtr& e) {
  require(e);
  if (e->node == Node::Complement) return e->base;
  if (e->node != Node::Bullet) return make_complement(e);
  std::optional<Ordinal> d;
  try {
    d = degree(e);
  } catch (const Error&) {
  }
  return make_atom("bullet-dual:" + serialize(e), bullet_dual_language(e), d);
}

} // namespace wadgeforge
