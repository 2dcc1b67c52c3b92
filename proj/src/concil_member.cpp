#include "wadgeforge/concil.hpp"

#include "wadgeforge/error.hpp"

#include <algorithm>

namespace wadgeforge {

namespace {

bool contains(const std::vector<Letter>& sorted, const Letter& l) {
  return std::binary_search(sorted.begin(), sorted.end(), l);
}

// Positions 0 .. span(w)-1 cover every letter class of w: the whole stem
// plus one period.
std::size_t span(const Word& w) { return w.stem().size() + w.period().size(); }

Word suffix(const Word& w, std::size_t i) {
  const auto& stem = w.stem();
  if (w.is_finite()) return Word::finite(LetterSeq(stem.begin() + std::min(i, stem.size()), stem.end()));
  if (i <= stem.size()) return Word::up(LetterSeq(stem.begin() + i, stem.end()), w.period());
  const auto& per = w.period();
  const std::size_t r = (i - stem.size()) % per.size();
  LetterSeq rotated(per.begin() + r, per.end());
  rotated.insert(rotated.end(), per.begin(), per.begin() + r);
  return Word::up({}, std::move(rotated));
}

// Keeps only letters of `keep` (the enrichment by restriction).
Word restrict_to(const Word& w, const std::vector<Letter>& keep) {
  auto filter = [&](const LetterSeq& s) {
    LetterSeq out;
    for (const auto& l : s)
      if (contains(keep, l)) out.push_back(l);
    return out;
  };
  LetterSeq stem = filter(w.stem());
  if (w.is_finite()) return Word::finite(std::move(stem));
  LetterSeq period = filter(w.period());
  if (period.empty()) return Word::finite(std::move(stem));
  return Word::up(std::move(stem), std::move(period));
}

Membership from_eval(const EvalResult& r) {
  if (r.status == EvalResult::Status::NoStabilization) return Membership::Unsupported;
  return Membership::Out;
}

Membership eval(const ExprPtr& e, const Word& w, const EvalOptions& opts);

Membership eval_sum(const Expr& e, const Word& w, const EvalOptions& opts) {
  const std::size_t limit = w.is_finite() ? w.stem().size() : span(w);
  for (std::size_t i = 0; i < limit; ++i) {
    const Letter& l = w.at(i);
    if (contains(e.small->alphabet, l)) continue;
    const Word rest = restrict_to(suffix(w, i + 1), e.base->alphabet);
    const Membership m = eval(e.base, rest, opts);
    return contains(e.minus, l) ? negate(m) : m;
  }
  return eval(e.small, w, opts);
}

Membership eval_bullet(const Expr& e, const Word& w, const EvalOptions& opts) {
  const Markers mk = Markers::level(e.level);
  const Letter a = Letter::plain(mk.a), b = Letter::plain(mk.b);
  const std::size_t size = w.is_finite() ? w.stem().size() : span(w);
  std::size_t n = 0;
  while (n < size && w.at(n) == a) ++n;
  // Outside a^+ b ...: either no a, no b, or an a^omega tail.
  if (n == 0 || n == size || !(w.at(n) == b)) return Membership::Out;
  const Word rest = suffix(w, n + 1);
  for (const auto& l : rest.letters())
    if (l == a || l == b) return Membership::Out;
  const unsigned level = static_cast<unsigned>(n);
  const CodeScan scan = scan_codes(rest, level, mk, e.offset);
  if (!scan.well_shaped) return Membership::Out;
  if (scan.junk) return Membership::In;
  const DecodeResult dec = decode_erasers(rest, level, mk, e.offset);
  if (!dec.ok()) return Membership::Unsupported;
  const EvalResult r = staged_eval(*dec.word, EraseMode::Approx, e.offset + level, e.offset + 1, opts);
  if (!r.ok()) return from_eval(r);
  return eval(e.base, r.word, opts);
}

Membership eval(const ExprPtr& e, const Word& w, const EvalOptions& opts) {
  switch (e->node) {
    case Node::Empty: return Membership::Out;
    case Node::Atom:
      if (!e->lang) throw AutomatonError("atom " + e->atom_id + " has no language");
      return e->lang->member(w);
    case Node::Sum: return eval_sum(*e, w, opts);
    case Node::Scalar: return eval(e->unfolded, w, opts);
    case Node::Tilde:
    case Node::Approx: {
      const auto mode = e->node == Node::Tilde ? EraseMode::Tilde : EraseMode::Approx;
      const EvalResult r = eraser_eval(w, mode, e->eraser, opts);
      if (!r.ok()) return from_eval(r);
      return eval(e->base, r.word, opts);
    }
    case Node::Bullet: return eval_bullet(*e, w, opts);
    case Node::DFlag:
      if (w.is_finite()) return Membership::Out;
      return eval(e->base, remove_letter(w, e->d), opts);
    case Node::Complement: return negate(eval(e->base, w, opts));
  }
  throw Error("unknown expression node");
}

} // namespace

Membership member(const ExprPtr& e, const Word& w, const EvalOptions& opts) {
  if (!e) throw PreconditionError("null expression");
  for (const auto& l : w.letters())
    if (!contains(e->alphabet, l)) throw AlphabetError("letter " + to_string(l) + " is not in the alphabet");
  return eval(e, w, opts);
}

} // namespace wadgeforge
