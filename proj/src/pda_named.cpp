#include "wadgeforge/pda.hpp"

#include "wadgeforge/error.hpp"

#include <algorithm>

namespace wadgeforge {

namespace {

Letter plain(const std::string& n) { return Letter::plain(n); }

void require_disjoint(const std::vector<Letter>& sigma, const std::vector<std::string>& reserved) {
  for (const auto& l : sigma)
    if (std::find(reserved.begin(), reserved.end(), l.name) != reserved.end() && !l.is_eraser())
      throw PreconditionError("base letter " + to_string(l) + " clashes with a marker");
}

// Adds `from --l--> to` for every stack symbol, leaving the stack alone.
void add_any_top(Pda& p, std::uint32_t from, const Letter& l, std::uint32_t to) {
  for (std::uint32_t x = 0; x < p.stack.size(); ++x) p.add(from, l, x, to, {x});
}

void add_any_top(Pda& p, std::uint32_t from, const std::vector<Letter>& ls, std::uint32_t to) {
  for (const auto& l : ls) add_any_top(p, from, l, to);
}

// u.sep.v with |v| = |u| + extra, over sigma and both separators.
Pda balanced(const std::vector<Letter>& sigma, const Letter& sep, unsigned extra) {
  Pda p;
  const auto left = p.add_state("left");
  const auto right = p.add_state("right");
  const auto done = p.add_state("done", true);
  p.initial = left;
  const auto z = p.bottom = p.add_symbol("Z");
  const auto x = p.add_symbol("X");
  p.add_letters(sigma);
  p.add_letters({plain("C"), plain("B")});
  for (const auto& l : sigma) {
    p.add(left, l, z, left, {x, z});
    p.add(left, l, x, left, {x, x});
    p.add(right, l, x, right, {});
  }
  p.add(left, sep, z, right, {z});
  p.add(left, sep, x, right, {x});
  if (extra == 0) {
    p.add(right, std::nullopt, z, done, {z});
  } else {
    for (const auto& l : sigma) p.add(right, l, z, done, {z});
  }
  return p;
}

// w.u with w in (Sigma* {C,B})^k and |u| != k+1: one X per separator, then
// u pops them. With `tail`, a separator and any omega-word follow.
Pda c_language(const std::vector<Letter>& sigma, bool tail) {
  const Letter c = plain("C"), b = plain("B");
  Pda p;
  const auto bound = p.add_state("bound");  // start or just after a separator
  const auto inside = p.add_state("inside");
  const auto shorter = p.add_state("short", true);  // |u| <= k so far
  const auto equal = p.add_state("equal");  // |u| = k+1
  const auto longer = p.add_state("long", true);  // |u| >= k+2
  p.initial = bound;
  const auto z = p.bottom = p.add_symbol("Z");
  const auto x = p.add_symbol("X");
  p.add_letters(sigma);
  p.add_letters({c, b});
  for (const Letter& sep : {c, b})
    for (auto from : {bound, inside}) {
      p.add(from, sep, z, bound, {x, z});
      p.add(from, sep, x, bound, {x, x});
    }
  for (const auto& l : sigma) {
    add_any_top(p, bound, l, inside);
    add_any_top(p, inside, l, inside);
    p.add(shorter, l, x, shorter, {});
    p.add(shorter, l, z, equal, {z});
    p.add(equal, l, z, longer, {z});
    p.add(longer, l, z, longer, {z});
  }
  p.add(bound, std::nullopt, z, shorter, {z});
  p.add(bound, std::nullopt, x, shorter, {x});
  if (tail) {
    const auto any = p.add_state("any", false, true);
    std::vector<Letter> all = sigma;
    all.push_back(c);
    all.push_back(b);
    for (auto f : {shorter, longer})
      for (const Letter& sep : {c, b}) add_any_top(p, f, sep, any);
    add_any_top(p, any, all, any);
    for (std::uint32_t s = 0; s < p.states.size(); ++s) p.final[s] = false;
  }
  return p;
}

// Complement of (Sigma* C Sigma* B)^omega.
Pda c1_language(const std::vector<Letter>& sigma) {
  const Letter c = plain("C"), b = plain("B");
  FiniteAutomaton a;
  const auto want_c = a.add_state("want_c");
  const auto want_b = a.add_state("want_b");
  const auto bad = a.add_state("bad", false, true);
  const auto quiet = a.add_state("quiet", false, true);
  a.initial = want_c;
  for (const auto& l : sigma) {
    a.add(want_c, l, want_c);
    a.add(want_b, l, want_b);
    a.add(bad, l, bad);
    a.add(quiet, l, quiet);
    a.add(want_c, l, quiet);
    a.add(want_b, l, quiet);
  }
  a.add(want_c, c, want_b);
  a.add(want_b, b, want_c);
  a.add(want_c, b, bad);
  a.add(want_b, c, bad);
  a.add(bad, c, bad);
  a.add(bad, b, bad);
  return to_pda(a);
}

std::vector<Letter> bullet_alphabet(const std::vector<Letter>& sigma, const Markers& m) {
  std::vector<Letter> all = sigma;
  for (const auto& n : m.all()) all.push_back(plain(n));
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

// a^n b u x^j with j > n.
Pda l_run(const std::vector<Letter>& sigma, const Markers& m, const std::string& letter) {
  const Letter a = plain(m.a), b = plain(m.b), x = plain(letter);
  Pda p;
  const auto s0 = p.add_state("s0");
  const auto count = p.add_state("count");
  const auto free = p.add_state("free");
  const auto run = p.add_state("run");
  const auto done = p.add_state("done", true);
  p.initial = s0;
  const auto z = p.bottom = p.add_symbol("Z");
  const auto y = p.add_symbol("Y");
  p.add_letters(bullet_alphabet(sigma, m));
  p.add(s0, a, z, count, {y, z});
  p.add(count, a, y, count, {y, y});
  p.add(count, b, y, free, {y});
  for (const auto& l : p.alphabet) p.add(free, l, y, free, {y});
  p.add(free, x, y, run, {});
  p.add(run, x, y, run, {});
  p.add(run, x, z, done, {z});
  p.add(done, x, z, done, {z});
  return p;
}

// a+ b u alpha B^j C^k D^l E^m beta (all >= 1) with counts `pair` and
// `pair`+1 (0 = B, 1 = C, 2 = D) different.
Pda l_pair(const std::vector<Letter>& sigma, const Markers& m, unsigned pair) {
  const Letter a = plain(m.a), b = plain(m.b), alpha = plain(m.alpha), beta = plain(m.beta);
  const std::vector<Letter> run{plain(m.B), plain(m.C), plain(m.D), plain(m.E)};
  Pda p;
  const auto s0 = p.add_state("s0");
  const auto prefix = p.add_state("prefix");
  const auto free = p.add_state("free");
  p.initial = s0;
  const auto z = p.bottom = p.add_symbol("Z");
  const auto y = p.add_symbol("Y");
  p.add_letters(bullet_alphabet(sigma, m));
  p.add(s0, a, z, prefix, {z});
  p.add(prefix, a, z, prefix, {z});
  p.add(prefix, b, z, free, {z});
  for (const auto& l : p.alphabet) p.add(free, l, z, free, {z});
  // States that may start the next block, all with Z on top.
  std::vector<std::uint32_t> prev{p.add_state("open")};
  p.add(free, alpha, z, prev[0], {z});
  for (unsigned i = 0; i < 4; ++i) {
    const std::string name = run[i].name;
    if (i == pair) {
      const auto push = p.add_state("push" + name);
      for (auto s : prev) p.add(s, run[i], z, push, {y, z});
      p.add(push, run[i], y, push, {y, y});
      prev = {push};
    } else if (i == pair + 1) {
      // j > k: discard the Y's left over; j < k: read past the bottom.
      const auto pop = p.add_state("pop" + name);
      const auto over = p.add_state("over" + name);
      const auto clear = p.add_state("clear" + name);
      const auto ready = p.add_state("ready" + name);
      for (auto s : prev) p.add(s, run[i], y, pop, {});
      p.add(pop, run[i], y, pop, {});
      p.add(pop, run[i], z, over, {z});
      p.add(over, run[i], z, over, {z});
      p.add(pop, std::nullopt, y, clear, {});
      p.add(clear, std::nullopt, y, clear, {});
      p.add(clear, std::nullopt, z, ready, {z});
      prev = {over, ready};
    } else {
      const auto loop = p.add_state("loop" + name);
      for (auto s : prev) p.add(s, run[i], z, loop, {z});
      p.add(loop, run[i], z, loop, {z});
      prev = {loop};
    }
  }
  const auto done = p.add_state("done", true);
  for (auto s : prev) p.add(s, beta, z, done, {z});
  return p;
}

} // namespace

FiniteAutomaton r_automaton(const std::vector<Letter>& sigma, unsigned level) {
  const Markers m = Markers::level(level);
  require_disjoint(sigma, m.all());
  FiniteAutomaton r;
  const auto s0 = r.add_state("s0");
  const auto prefix = r.add_state("prefix");
  const auto body = r.add_state("body", true, true);
  r.initial = s0;
  r.add(s0, plain(m.a), prefix);
  r.add(prefix, plain(m.a), prefix);
  r.add(prefix, plain(m.b), body);
  for (const auto& l : sigma) r.add(body, l, body);
  std::uint32_t prev = r.add_state("open");
  r.add(body, plain(m.alpha), prev);
  for (const auto& n : {m.B, m.C, m.D, m.E}) {
    const auto s = r.add_state("in" + n);
    r.add(prev, plain(n), s);
    r.add(s, plain(n), s);
    prev = s;
  }
  r.add(prev, plain(m.beta), body);
  for (const auto& n : m.all()) r.alphabet.push_back(plain(n));
  for (const auto& l : sigma) r.alphabet.push_back(l);
  std::sort(r.alphabet.begin(), r.alphabet.end());
  r.alphabet.erase(std::unique(r.alphabet.begin(), r.alphabet.end()), r.alphabet.end());
  return r;
}

Pda l_language(const std::vector<Letter>& sigma, unsigned level) {
  const Markers m = Markers::level(level);
  require_disjoint(sigma, m.all());
  Pda l = l_run(sigma, m, m.B);
  for (const auto& n : {m.C, m.D, m.E}) l = pda_union(l, l_run(sigma, m, n));
  for (unsigned i = 0; i < 3; ++i) l = pda_union(l, l_pair(sigma, m, i));
  return l;
}

std::vector<std::string> named_languages() {
  return {"D1", "D2", "D", "C", "C1", "C2", "h_complement", "L^B", "L^C", "L^D", "L^E",
          "L^(B,C)", "L^(C,D)", "L^(D,E)", "L", "R"};
}

Pda make_named(std::string_view name, const std::vector<Letter>& sigma_in) {
  std::vector<Letter> sigma = sigma_in;
  std::sort(sigma.begin(), sigma.end());
  sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
  if (sigma.empty()) throw PreconditionError("named languages need a nonempty base alphabet");
  const bool grid = name == "D1" || name == "D2" || name == "D" || name == "C" || name == "C1" || name == "C2" ||
                    name == "h_complement";
  if (grid) require_disjoint(sigma, {"C", "B"});
  else require_disjoint(sigma, Markers{}.all());

  if (name == "D1") return balanced(sigma, plain("B"), 0);
  if (name == "D2") return balanced(sigma, plain("C"), 1);
  if (name == "D") return pda_union(balanced(sigma, plain("B"), 0), balanced(sigma, plain("C"), 1));
  if (name == "C") return c_language(sigma, false);
  if (name == "C1") return c1_language(sigma);
  if (name == "C2") return c_language(sigma, true);
  if (name == "h_complement") return pda_union(c1_language(sigma), c_language(sigma, true));
  const Markers m;
  if (name == "L^B") return l_run(sigma, m, m.B);
  if (name == "L^C") return l_run(sigma, m, m.C);
  if (name == "L^D") return l_run(sigma, m, m.D);
  if (name == "L^E") return l_run(sigma, m, m.E);
  if (name == "L^(B,C)") return l_pair(sigma, m, 0);
  if (name == "L^(C,D)") return l_pair(sigma, m, 1);
  if (name == "L^(D,E)") return l_pair(sigma, m, 2);
  if (name == "L") return l_language(sigma, 1);
  if (name == "R") return to_pda(r_automaton(sigma, 1));
  throw PreconditionError("unknown named language '" + std::string(name) + "'");
}

namespace {

// (Sigma* s1 Sigma* s2 ...)* cycling through `seps`; the state reached by
// the last separator is final, or Buchi when `omega`.
FiniteAutomaton separator_cycle(const std::vector<Letter>& sigma, const std::vector<Letter>& seps, bool omega) {
  FiniteAutomaton f;
  std::vector<std::uint32_t> wait;
  for (std::size_t i = 0; i < seps.size(); ++i) wait.push_back(f.add_state("wait" + std::to_string(i)));
  const auto closed = f.add_state("closed", !omega, omega);
  f.initial = wait[0];
  for (std::size_t i = 0; i < seps.size(); ++i) {
    for (const auto& l : sigma) f.add(wait[i], l, wait[i]);
    f.add(wait[i], seps[i], i + 1 < seps.size() ? wait[i + 1] : closed);
  }
  for (const auto& l : sigma) f.add(closed, l, wait[0]);
  f.add(closed, seps[0], seps.size() > 1 ? wait[1] : closed);
  return f;
}

} // namespace

Pda build_ce(const Pda& l, const std::vector<Letter>& sigma) {
  if (!l.has_buchi()) throw PreconditionError("the base language needs a Buchi state");
  require_disjoint(sigma, {"C", "B"});
  const Letter c = plain("C"), b = plain("B");
  const Pda d = make_named("D", sigma);
  std::map<Letter, Pda> g;
  for (const auto& a : sigma) {
    FiniteAutomaton single;
    const auto s0 = single.add_state("s0");
    const auto s1 = single.add_state("s1", true);
    single.initial = s0;
    single.add(s0, a, s1);
    g.emplace(a, concat_left_regular(single, d));
  }
  const Pda image = intersect_regular(substitute(l, g), separator_cycle(sigma, {b, c}, true));
  // (Sigma* C Sigma* B)* (Sigma* C)
  FiniteAutomaton head;
  const auto want_c = head.add_state("want_c");
  const auto after_c = head.add_state("after_c", true);
  const auto want_b = head.add_state("want_b");
  head.initial = want_c;
  for (const auto& x : sigma) {
    head.add(want_c, x, want_c);
    head.add(after_c, x, want_b);
    head.add(want_b, x, want_b);
  }
  head.add(want_c, c, after_c);
  head.add(after_c, b, want_c);
  head.add(want_b, b, want_c);
  return concat_left_regular(head, image);
}

Pda build_sigma_omega_complete(const Pda& l, const std::vector<Letter>& sigma) {
  return pda_union(build_ce(l, sigma), make_named("h_complement", sigma));
}

} // namespace wadgeforge
