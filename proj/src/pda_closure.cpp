#include "wadgeforge/pda.hpp"

#include "wadgeforge/error.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

namespace wadgeforge {

namespace {

struct Offsets {
  std::uint32_t state;
  std::uint32_t symbol;
};

// Copies src into dst with renamed states and symbols. Acceptance flags are
// kept only when asked.
Offsets embed(Pda& dst, const Pda& src, const std::string& prefix, bool keep_final, bool keep_buchi) {
  const Offsets off{static_cast<std::uint32_t>(dst.states.size()), static_cast<std::uint32_t>(dst.stack.size())};
  for (std::size_t i = 0; i < src.states.size(); ++i)
    dst.add_state(prefix + src.states[i], keep_final && src.final[i], keep_buchi && src.buchi[i]);
  for (const auto& s : src.stack) dst.add_symbol(prefix + s);
  dst.add_letters(src.alphabet);
  for (const auto& t : src.transitions) {
    std::vector<std::uint32_t> push;
    for (auto s : t.push) push.push_back(s + off.symbol);
    dst.add(t.from + off.state, t.letter, t.top + off.symbol, t.to + off.state, std::move(push));
  }
  return off;
}

// Keeps the automaton valid when a construction leaves no accepting state.
void ensure_acceptance(Pda& p) {
  if (!p.has_final() && !p.has_buchi()) p.add_state("dead", true, true);
}

bool accepts_empty_word(const Pda& p) { return p.has_final() && accepts_finite(p, Word::finite({})); }

} // namespace

Pda pda_union(const Pda& p, const Pda& q) {
  Pda r;
  r.initial = r.add_state("u0");
  r.bottom = r.add_symbol("Z");
  const Offsets a = embed(r, p, "1.", true, true);
  const Offsets b = embed(r, q, "2.", true, true);
  r.add(r.initial, std::nullopt, r.bottom, a.state + p.initial, {a.symbol + p.bottom});
  r.add(r.initial, std::nullopt, r.bottom, b.state + q.initial, {b.symbol + q.bottom});
  return r;
}

// Product (q, s, i); i selects whose Buchi set is awaited next.
Pda intersect_regular(const Pda& p, const FiniteAutomaton& r) {
  std::vector<std::vector<const PdaTransition*>> p_out(p.states.size());
  for (const auto& t : p.transitions) p_out[t.from].push_back(&t);
  std::vector<std::vector<const FiniteAutomaton::Edge*>> r_out(r.states.size());
  for (const auto& e : r.edges) r_out[e.from].push_back(&e);

  Pda out;
  out.stack = p.stack;
  out.bottom = p.bottom;
  out.add_letters(p.alphabet);
  out.add_letters(r.alphabet);
  std::map<std::tuple<std::uint32_t, std::uint32_t, int>, std::uint32_t> ids;
  std::deque<std::tuple<std::uint32_t, std::uint32_t, int>> todo;
  auto id = [&](std::uint32_t q, std::uint32_t s, int i) {
    auto key = std::make_tuple(q, s, i);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    const std::uint32_t n = out.add_state(p.states[q] + "|" + r.states[s] + "|" + std::to_string(i),
                                          p.final[q] && r.final[s], i == 0 && p.buchi[q]);
    ids.emplace(key, n);
    todo.push_back(key);
    return n;
  };
  out.initial = id(p.initial, r.initial, 0);
  while (!todo.empty()) {
    auto [q, s, i] = todo.front();
    todo.pop_front();
    const std::uint32_t from = ids.at({q, s, i});
    int next = i;
    if (i == 0 && p.buchi[q]) next = 1;
    else if (i == 1 && r.buchi[s]) next = 0;
    for (const PdaTransition* t : p_out[q]) {
      if (!t->letter) {
        out.add(from, std::nullopt, t->top, id(t->to, s, next), t->push);
        continue;
      }
      for (const auto* e : r_out[s])
        if (e->letter == *t->letter) out.add(from, t->letter, t->top, id(t->to, e->to, next), t->push);
    }
  }
  ensure_acceptance(out);
  return out;
}

Pda concat_left_regular(const FiniteAutomaton& r, const Pda& p) {
  Pda out;
  out.bottom = out.add_symbol("Z");
  for (const auto& s : r.states) out.add_state("r." + s);
  out.initial = r.initial;
  out.add_letters(r.alphabet);
  for (const auto& e : r.edges) out.add(e.from, e.letter, out.bottom, e.to, {out.bottom});
  const Offsets off = embed(out, p, "p.", true, true);
  for (std::uint32_t s = 0; s < r.states.size(); ++s)
    if (r.final[s]) out.add(s, std::nullopt, out.bottom, off.state + p.initial, {off.symbol + p.bottom});
  return out;
}

// Each lettered transition of p on a substituted letter becomes: push a
// fresh bottom for the image above the current top, run a private copy of
// the image, and from one of its final states pop the image's symbols back
// down to the saved top before applying p's rewrite. Only p's own states
// stay final or Buchi.
Pda substitute(const Pda& p, const std::map<Letter, Pda>& sigma) {
  for (const auto& [letter, img] : sigma) {
    validate(img);
    if (accepts_empty_word(img))
      throw PreconditionError("image of " + to_string(letter) + " contains the empty word");
  }
  Pda out;
  for (std::size_t i = 0; i < p.states.size(); ++i) out.add_state(p.states[i], p.final[i], p.buchi[i]);
  out.stack = p.stack;
  out.initial = p.initial;
  out.bottom = p.bottom;
  std::size_t copy = 0;
  for (const auto& t : p.transitions) {
    auto it = t.letter ? sigma.find(*t.letter) : sigma.end();
    if (it == sigma.end()) {
      out.add(t.from, t.letter, t.top, t.to, t.push);
      continue;
    }
    const Pda& img = it->second;
    const std::string prefix = "s" + std::to_string(copy++) + ".";
    const Offsets off = embed(out, img, prefix, false, false);
    const std::uint32_t cleanup = out.add_state(prefix + "cleanup");
    out.add(t.from, std::nullopt, t.top, off.state + img.initial, {off.symbol + img.bottom, t.top});
    for (std::uint32_t f = 0; f < img.states.size(); ++f) {
      if (!img.final[f]) continue;
      out.add(off.state + f, std::nullopt, t.top, t.to, t.push);
      for (std::uint32_t y = 0; y < img.stack.size(); ++y) out.add(off.state + f, std::nullopt, off.symbol + y, cleanup, {});
    }
    for (std::uint32_t y = 0; y < img.stack.size(); ++y) out.add(cleanup, std::nullopt, off.symbol + y, cleanup, {});
    out.add(cleanup, std::nullopt, t.top, t.to, t.push);
  }
  for (const auto& l : p.alphabet) {
    auto it = sigma.find(l);
    out.add_letters(it == sigma.end() ? std::vector<Letter>{l} : it->second.alphabet);
  }
  ensure_acceptance(out);
  return out;
}

// States (q, b) with b = "a letter of p was read since the last Buchi
// visit that counted", so ignored letters alone never satisfy the Buchi
// condition. A final state may hand over to a tail that reads ignored
// letters forever.
Pda ignore_letters(const Pda& p, const std::vector<Letter>& ignored) {
  for (const auto& l : ignored)
    if (std::binary_search(p.alphabet.begin(), p.alphabet.end(), l))
      throw PreconditionError("ignored letter " + to_string(l) + " is in the automaton's alphabet");
  Pda out;
  out.stack = p.stack;
  // Below p's stack, so the tail still runs after p empties it.
  const std::uint32_t zero = out.add_symbol("Z0");
  out.add_letters(p.alphabet);
  out.add_letters(ignored);
  const std::uint32_t n = static_cast<std::uint32_t>(p.states.size());
  for (int b = 0; b < 2; ++b)
    for (std::uint32_t q = 0; q < n; ++q)
      out.add_state(p.states[q] + "|" + std::to_string(b), p.final[q], b == 1 && p.buchi[q]);
  for (const auto& t : p.transitions)
    for (std::uint32_t b = 0; b < 2; ++b) {
      std::uint32_t next = (b == 1 && p.buchi[t.from]) ? 0 : b;
      if (t.letter) next = 1;
      out.add(t.from + b * n, t.letter, t.top, t.to + next * n, t.push);
    }
  const std::uint32_t tail = out.add_state("tail", false, true);
  for (std::uint32_t x = 0; x <= zero; ++x) {
    for (std::uint32_t q = 0; q < 2 * n; ++q) {
      // Leaving a counted Buchi copy clears the bit, as for p's own moves.
      const std::uint32_t to = q >= n && p.buchi[q - n] ? q - n : q;
      for (const auto& l : ignored) out.add(q, l, x, to, {x});
      if (p.final[q % n]) out.add(q, std::nullopt, x, tail, {x});
    }
    for (const auto& l : ignored) out.add(tail, l, x, tail, {x});
  }
  out.initial = out.add_state("init");
  out.bottom = zero;
  out.add(out.initial, std::nullopt, zero, p.initial, {p.bottom, zero});
  return out;
}

} // namespace wadgeforge
