#include "wadgeforge/words.hpp"

#include "wadgeforge/error.hpp"

#include <algorithm>
#include <set>

namespace wadgeforge {

namespace {

// Smallest root r with seq = r^k.
LetterSeq primitive_root(const LetterSeq& seq) {
  const std::size_t n = seq.size();
  for (std::size_t len = 1; len < n; ++len) {
    if (n % len != 0) continue;
    bool ok = true;
    for (std::size_t i = len; i < n && ok; ++i) ok = seq[i] == seq[i - len];
    if (ok) return LetterSeq(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(len));
  }
  return seq;
}

} // namespace

Word Word::finite(LetterSeq letters) {
  Word w;
  w.stem_ = std::move(letters);
  return w;
}

Word Word::up(LetterSeq stem, LetterSeq period) {
  if (period.empty()) throw PreconditionError("ultimately periodic word needs a nonempty period");
  period = primitive_root(period);
  while (!stem.empty() && stem.back() == period.back()) {
    stem.pop_back();
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
  }
  Word w;
  w.kind_ = Kind::UP;
  w.stem_ = std::move(stem);
  w.period_ = std::move(period);
  return w;
}

const Letter& Word::at(std::size_t i) const {
  if (i < stem_.size()) return stem_[i];
  if (is_finite()) throw PreconditionError("word index out of range");
  return period_[(i - stem_.size()) % period_.size()];
}

LetterSeq Word::prefix(std::size_t n) const {
  if (is_finite()) n = std::min(n, stem_.size());
  LetterSeq out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
  return out;
}

std::vector<Letter> Word::letters() const {
  std::set<Letter> s(stem_.begin(), stem_.end());
  s.insert(period_.begin(), period_.end());
  return {s.begin(), s.end()};
}

Word concat(const LetterSeq& left, const Word& w) {
  LetterSeq stem = left;
  stem.insert(stem.end(), w.stem().begin(), w.stem().end());
  if (w.is_finite()) return Word::finite(std::move(stem));
  return Word::up(std::move(stem), w.period());
}

namespace {

// Runs seq on stack; returns false on an undefined pop (Approx).
bool run_stack(LetterSeq& stack, const LetterSeq& seq, EraseMode mode, unsigned eraser) {
  for (const auto& l : seq) {
    if (l.eraser == eraser) {
      if (stack.empty()) {
        if (mode == EraseMode::Approx) return false;
      } else {
        stack.pop_back();
      }
    } else {
      stack.push_back(l);
    }
  }
  return true;
}

// Net effect of seq on any stack: drops `under` letters below its start,
// then leaves `pushed` on top.
struct Effect {
  std::size_t under = 0;
  LetterSeq pushed;
};

Effect effect_of(const LetterSeq& seq, unsigned eraser) {
  Effect e;
  for (const auto& l : seq) {
    if (l.eraser == eraser) {
      if (e.pushed.empty()) ++e.under;
      else e.pushed.pop_back();
    } else {
      e.pushed.push_back(l);
    }
  }
  return e;
}

EvalResult undefined() {
  EvalResult r;
  r.status = EvalResult::Status::Undefined;
  return r;
}

} // namespace

EvalResult eraser_eval(const Word& w, EraseMode mode, unsigned eraser, const EvalOptions& opts) {
  if (eraser == 0) throw PreconditionError("eraser index must be positive");
  const std::uint64_t cost = w.stem().size() + 2 * w.period().size();
  if (cost > opts.max_steps) {
    EvalResult r;
    r.status = EvalResult::Status::NoStabilization;
    return r;
  }
  LetterSeq stack;
  if (!run_stack(stack, w.stem(), mode, eraser)) return undefined();
  if (w.is_finite()) return {EvalResult::Status::Ok, Word::finite(std::move(stack))};

  // Each period drops k letters and pushes v; the limit is the part of the
  // stack that is never popped again.
  const Effect eff = effect_of(w.period(), eraser);
  const std::size_t k = eff.under;
  const LetterSeq& v = eff.pushed;
  if (stack.size() < k) {
    if (mode == EraseMode::Approx) return undefined();
    stack.clear();
  } else {
    stack.resize(stack.size() - k);
  }
  if (v.size() > k) {
    LetterSeq grow(v.begin(), v.end() - static_cast<std::ptrdiff_t>(k));
    return {EvalResult::Status::Ok, Word::up(std::move(stack), std::move(grow))};
  }
  if (v.size() == k) return {EvalResult::Status::Ok, Word::finite(std::move(stack))};
  // The stack shrinks every period until a period underflows.
  if (mode == EraseMode::Approx) return undefined();
  return {EvalResult::Status::Ok, Word::finite({})};
}

EvalResult staged_eval(const Word& w, EraseMode mode, unsigned hi, unsigned lo,
                       const EvalOptions& opts) {
  EvalResult cur{EvalResult::Status::Ok, w};
  for (unsigned j = hi; j >= lo && j > 0; --j) {
    cur = eraser_eval(cur.word, mode, j, opts);
    if (!cur.ok()) return cur;
  }
  return cur;
}

Markers Markers::level(unsigned level) {
  Markers m;
  if (level <= 1) return m;
  const std::string s = std::to_string(level);
  for (std::string* f : {&m.a, &m.b, &m.alpha, &m.beta, &m.B, &m.C, &m.D, &m.E}) *f += s;
  return m;
}

namespace {

LetterSeq encode_seq(const LetterSeq& seq, const Markers& m, unsigned offset) {
  LetterSeq out;
  for (const auto& l : seq) {
    if (l.eraser <= offset) {
      out.push_back(l);
      continue;
    }
    const unsigned k = l.eraser - offset;
    out.push_back(Letter::plain(m.alpha));
    for (const std::string* s : {&m.B, &m.C, &m.D, &m.E})
      for (unsigned i = 0; i < k; ++i) out.push_back(Letter::plain(*s));
    out.push_back(Letter::plain(m.beta));
  }
  return out;
}

// Incremental decoder; `seg` holds the letters of an open segment.
class Decoder {
public:
  Decoder(unsigned n, const Markers& m, unsigned offset, bool lenient = false)
      : n_(n), m_(m), offset_(offset), lenient_(lenient) {}

  bool feed(const Letter& l, LetterSeq& out) {
    if (seg_.empty()) {
      if (l.eraser == 0 && l.name == m_.alpha) {
        seg_.push_back(l);
        return true;
      }
      if (is_code_letter(l)) return fail(Malformed::Shape, "stray " + l.name);
      out.push_back(l);
      return true;
    }
    seg_.push_back(l);
    if (l.eraser == 0 && l.name == m_.beta) return close(out);
    if (!is_code_letter(l) || l.name == m_.alpha) return fail(Malformed::Shape, "bad letter in segment");
    return true;
  }

  bool open() const { return !seg_.empty(); }
  std::optional<Malformed> junk;
  const LetterSeq& segment() const { return seg_; }
  Malformed reason = Malformed::Shape;
  std::string detail;

private:
  bool is_code_letter(const Letter& l) const {
    if (l.eraser != 0) return false;
    return l.name == m_.alpha || l.name == m_.beta || l.name == m_.B || l.name == m_.C ||
           l.name == m_.D || l.name == m_.E;
  }

  bool fail(Malformed r, std::string d) {
    reason = r;
    detail = std::move(d);
    return false;
  }

  // A well-shaped segment that codes no usable eraser.
  bool reject(Malformed r, std::string d) {
    if (!lenient_) return fail(r, std::move(d));
    if (!junk) junk = r;
    seg_.clear();
    return true;
  }

  bool close(LetterSeq& out) {
    // seg_ = alpha B^j C^k D^l E^m beta
    std::size_t i = 1;
    std::size_t counts[4] = {0, 0, 0, 0};
    const std::string* names[4] = {&m_.B, &m_.C, &m_.D, &m_.E};
    for (int g = 0; g < 4; ++g) {
      while (i + 1 < seg_.size() && seg_[i].name == *names[g]) {
        ++counts[g];
        ++i;
      }
      if (counts[g] == 0) return fail(Malformed::Shape, "missing " + *names[g] + " block");
    }
    if (i + 1 != seg_.size()) return fail(Malformed::Shape, "blocks out of order");
    if (counts[0] != counts[1]) return reject(Malformed::JneK, "j != k");
    if (counts[1] != counts[2]) return reject(Malformed::KneL, "k != l");
    if (counts[2] != counts[3]) return reject(Malformed::LneM, "l != m");
    if (counts[0] > n_)
      return reject(Malformed::IndexTooLarge,
                    "index " + std::to_string(counts[0]) + " > " + std::to_string(n_));
    out.push_back(Letter::erase(static_cast<unsigned>(counts[0]) + offset_));
    seg_.clear();
    return true;
  }

  unsigned n_;
  const Markers& m_;
  unsigned offset_;
  bool lenient_;
  LetterSeq seg_;
};

DecodeResult malformed(const Decoder& d) {
  DecodeResult r;
  r.reason = d.reason;
  r.detail = d.detail;
  return r;
}

} // namespace

Word encode_erasers(const Word& w, const Markers& m, unsigned offset) {
  LetterSeq stem = encode_seq(w.stem(), m, offset);
  if (w.is_finite()) return Word::finite(std::move(stem));
  return Word::up(std::move(stem), encode_seq(w.period(), m, offset));
}

std::string to_string(Malformed m) {
  switch (m) {
    case Malformed::Shape: return "shape";
    case Malformed::JneK: return "j!=k";
    case Malformed::KneL: return "k!=l";
    case Malformed::LneM: return "l!=m";
    case Malformed::IndexTooLarge: return "index>n";
    case Malformed::Unterminated: return "unterminated";
  }
  return "?";
}

DecodeResult decode_erasers(const Word& w, unsigned n, const Markers& m, unsigned offset) {
  Decoder dec(n, m, offset);
  LetterSeq stem;
  for (const auto& l : w.stem())
    if (!dec.feed(l, stem)) return malformed(dec);
  if (w.is_finite()) {
    if (dec.open()) {
      dec.reason = Malformed::Unterminated;
      dec.detail = "segment not closed";
      return malformed(dec);
    }
    return {Word::finite(std::move(stem)), Malformed::Shape, ""};
  }
  // Feed whole periods until the open segment at a period boundary repeats;
  // everything decoded between the two occurrences is the output period.
  const bool period_has_beta =
      std::any_of(w.period().begin(), w.period().end(),
                  [&](const Letter& l) { return l.eraser == 0 && l.name == m.beta; });
  std::vector<LetterSeq> seen{dec.segment()};
  std::vector<std::size_t> marks{stem.size()};
  LetterSeq out = stem;
  for (;;) {
    if (dec.open() && !period_has_beta) {
      DecodeResult r;
      r.reason = Malformed::Unterminated;
      r.detail = "segment never closes";
      return r;
    }
    for (const auto& l : w.period())
      if (!dec.feed(l, out)) return malformed(dec);
    auto it = std::find(seen.begin(), seen.end(), dec.segment());
    if (it != seen.end()) {
      const std::size_t from = marks[static_cast<std::size_t>(it - seen.begin())];
      LetterSeq s(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(from));
      LetterSeq p(out.begin() + static_cast<std::ptrdiff_t>(from), out.end());
      if (p.empty()) {
        DecodeResult r;
        r.reason = Malformed::Unterminated;
        r.detail = "segment never closes";
        return r;
      }
      return {Word::up(std::move(s), std::move(p)), Malformed::Shape, ""};
    }
    seen.push_back(dec.segment());
    marks.push_back(out.size());
  }
}

CodeScan scan_codes(const Word& w, unsigned n, const Markers& m, unsigned offset) {
  Decoder dec(n, m, offset, true);
  LetterSeq sink;
  CodeScan out;
  auto fed = [&](const LetterSeq& s) {
    for (const auto& l : s)
      if (!dec.feed(l, sink)) return false;
    return true;
  };
  if (!fed(w.stem())) return {false, std::nullopt};
  if (!w.is_finite()) {
    // A segment open at a period boundary closes within the next period, or
    // never closes at all; three copies decide both cases.
    for (int i = 0; i < 3; ++i) {
      if (!fed(w.period())) return {false, std::nullopt};
      sink.clear();
    }
  }
  // A segment open at the end of a period closes later only if the period
  // has a beta; otherwise it stays open forever.
  bool closes = w.is_finite() ? false
                              : std::any_of(w.period().begin(), w.period().end(), [&](const Letter& l) {
                                  return l.eraser == 0 && l.name == m.beta;
                                });
  out.well_shaped = !dec.open() || closes;
  out.junk = dec.junk;
  return out;
}

Word remove_letter(const Word& w, const Letter& d) {
  auto filter = [&](const LetterSeq& s) {
    LetterSeq out;
    for (const auto& l : s)
      if (!(l == d)) out.push_back(l);
    return out;
  };
  LetterSeq stem = filter(w.stem());
  if (w.is_finite()) return Word::finite(std::move(stem));
  LetterSeq period = filter(w.period());
  if (period.empty()) return Word::finite(std::move(stem));
  return Word::up(std::move(stem), std::move(period));
}

} // namespace wadgeforge
