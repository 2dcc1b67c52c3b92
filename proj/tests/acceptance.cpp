// Acceptance suite: one PASS/FAIL line per criterion. Every criterion
// requires zero disagreements; runtime bounds are checked where stated.

#include "ce_witness.hpp"
#include "oracles.hpp"
#include "ordinal_gen.hpp"
#include "pda_oracles.hpp"

#include "wadgeforge/concil.hpp"
#include "wadgeforge/error.hpp"
#include "wadgeforge/game.hpp"
#include "wadgeforge/ordinal.hpp"
#include "wadgeforge/pda.hpp"
#include "wadgeforge/words.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <tuple>

using namespace wadgeforge;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

// Counts checks and keeps the first failure for the report.
class Tally {
public:
  void check(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ == 0) first_ = what();
  }
  std::size_t checks() const { return checks_; }
  std::size_t failures() const { return failures_; }
  Verdict verdict(std::string detail) const {
    if (failures_ == 0) return {true, std::move(detail)};
    return {false, detail + "; " + std::to_string(failures_) + " failure(s), first: " + first_};
  }

private:
  std::size_t checks_ = 0, failures_ = 0;
  std::string first_;
};

Ordinal o0(const char* s) { return parse_ordinal(s, Base::Omega); }
Ordinal o1(const char* s) { return parse_ordinal(s, Base::Omega1); }
std::vector<Letter> L(const char* s) { return parse_letters(s); }

// 1. Worked examples of H with the displayed images.
Verdict h_golden() {
  Tally t;
  const std::pair<const char*, const char*> cases[] = {
      {"e2 + 4", "e2 + 4"},
      {"e2 + e1 + 4", "e2 + e1 + 5"},
      {"e2*3 + w^(e1 + w^w) + w^(w^w + 2)", "e2*3 + w^(e1 + w^w) + w^(w^w + 2)"},
      {"e4*3 + w^(e3 + e1) + w^(e2 + e1 + 5) + e2 + 3", "e4*3 + w^(e3 + e1 + 1) + w^(e2 + e1 + 6) + e2 + 4"},
  };
  for (const auto& [in, out] : cases) {
    const std::string got = to_string(h_map(o0(in)));
    t.check(got == to_string(o1(out)), [&] { return std::string("H(") + in + ") = " + got; });
  }
  return t.verdict(std::to_string(t.checks()) + " examples");
}

// 2. Eraser examples.
Verdict eraser_golden() {
  Tally t;
  const std::pair<const char*, const char*> cases[] = {
      {"(a~)^w", "λ"}, {"(a~~)^w", "λ"}, {"(ab~)^w", "(a)^w"}, {"bb(~a)^w", "b"}};
  for (const auto& [in, out] : cases) {
    const EvalResult r = eraser_eval(parse_word(in), EraseMode::Tilde);
    const std::string got = r.ok() ? to_string(r.word) : "UNDEFINED";
    t.check(got == out, [&] { return std::string(in) + " -> " + got; });
  }
  return t.verdict(std::to_string(t.checks()) + " examples");
}

// 3. degree(0 + 0) = 2 and the iterated bullets of it.
Verdict degree_chain() {
  Tally t;
  ExprPtr e = make_sum(make_empty(), make_empty());
  t.check(degree(e) == o1("2"), [&] { return "degree(sum) = " + to_string(degree(e)); });
  for (std::uint32_t j = 1; j <= 5; ++j) {
    e = make_bullet(e);
    const Ordinal d = degree(e);
    t.check(d == Ordinal::epsilon(j - 1, Base::Omega1),
            [&] { return "bullet^" + std::to_string(j) + " has degree " + to_string(d); });
  }
  return t.verdict("j = 1..5");
}

// 4. Omega realizes every sampled image of H.
Verdict omega_round_trip() {
  Tally t;
  std::mt19937_64 rng(4004);
  std::size_t n = 0;
  while (n < 600) {
    const Ordinal a = wf_test::random_ordinal(rng, Base::Omega, 4, 5, 6);
    if (a.is_zero()) continue;
    ++n;
    const Ordinal d = h_map(a);
    std::string got;
    try {
      got = to_string(degree(build_omega(d)));
    } catch (const Error& e) {
      got = e.what();
    }
    t.check(got == to_string(d), [&] { return "alpha=" + to_string(a) + " H=" + to_string(d) + " got " + got; });
  }
  return t.verdict(std::to_string(n) + " ordinals below e6, depth <= 4, coefficients <= 5");
}

// 5. UP eraser evaluation against the prefix simulation limit.
Verdict up_eval_oracle() {
  Tally t;
  std::mt19937_64 rng(5005);
  const Letter pool[] = {Letter::plain("a"), Letter::plain("b"), Letter::plain("c"), Letter::erase(1)};
  auto seq = [&](std::size_t lo) {
    LetterSeq s(lo + rng() % (9 - lo));
    for (auto& l : s) l = pool[rng() % 4];
    return s;
  };
  const std::size_t kWords = 1200, kSim = 20000;
  for (std::size_t i = 0; i < kWords; ++i) {
    const Word w = Word::up(seq(0), seq(1));
    for (bool approx : {false, true}) {
      const EvalResult r = eraser_eval(w, approx ? EraseMode::Approx : EraseMode::Tilde);
      const auto ref = oracle::erase_limit(w, 1, approx, kSim);
      auto what = [&] { return to_string(w) + (approx ? " approx" : " tilde"); };
      if (r.status == EvalResult::Status::NoStabilization || (r.status == EvalResult::Status::Undefined) != ref.undefined) {
        t.check(false, what);
        continue;
      }
      if (!r.ok()) {
        t.check(true, what);
        continue;
      }
      // A finite limit is the whole stable prefix; an infinite one grows
      // with the simulation and must extend it.
      if (r.word.is_finite())
        t.check(Word::finite(ref.stable) == r.word, what);
      else
        t.check(ref.stable.size() > 100 && r.word.prefix(ref.stable.size()) == ref.stable, what);
    }
  }
  return t.verdict(std::to_string(kWords) + " UP words x 2 modes, |u|,|v| <= 8, letters {a,b,c,~}, oracle " +
                   std::to_string(kSim) + " steps");
}

// Every sequence over `letters` of length <= max.
void each_word(const std::vector<Letter>& letters, std::size_t max, const std::function<void(const LetterSeq&)>& f) {
  LetterSeq cur;
  std::function<void()> rec = [&] {
    f(cur);
    if (cur.size() == max) return;
    for (const auto& l : letters) {
      cur.push_back(l);
      rec();
      cur.pop_back();
    }
  };
  rec();
}

// The transition relation is unchanged by swapping `x` and `y`, so the
// language is closed under that swap.
bool swap_invariant(const Pda& p, const Letter& x, const Letter& y) {
  using T = std::tuple<std::uint32_t, std::optional<Letter>, std::uint32_t, std::uint32_t, std::vector<std::uint32_t>>;
  std::vector<T> a, b;
  for (const auto& tr : p.transitions) {
    a.emplace_back(tr.from, tr.letter, tr.top, tr.to, tr.push);
    std::optional<Letter> l = tr.letter;
    if (l == x) l = y;
    else if (l == y) l = x;
    b.emplace_back(tr.from, l, tr.top, tr.to, tr.push);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// Words near a+ b u alpha B+ C+ D+ E+ beta: small counts, all single-letter
// substitutions, deletions and insertions.
std::vector<LetterSeq> shape_neighbourhood(const std::vector<Letter>& letters) {
  std::vector<LetterSeq> base;
  const char* us[] = {"", "0", "β", "Ea"};
  for (int n = 1; n <= 2; ++n)
    for (const char* u : us)
      for (int code = 0; code < 81; ++code) {
        std::string s(static_cast<std::size_t>(n), 'a');
        s += "b";
        s += u;
        s += "α";
        int c = code;
        for (const char* r : {"B", "C", "D", "E"}) {
          s.append(static_cast<std::size_t>(1 + c % 3), r[0]);
          c /= 3;
        }
        s += "β";
        base.push_back(parse_letters(s));
      }
  std::vector<LetterSeq> out;
  for (const auto& w : base) {
    out.push_back(w);
    for (std::size_t i = 0; i <= w.size(); ++i) {
      if (i < w.size()) {
        LetterSeq d = w;
        d.erase(d.begin() + static_cast<std::ptrdiff_t>(i));
        out.push_back(std::move(d));
      }
      for (const auto& l : letters) {
        LetterSeq ins = w;
        ins.insert(ins.begin() + static_cast<std::ptrdiff_t>(i), l);
        out.push_back(std::move(ins));
        if (i < w.size() && !(w[i] == l)) {
          LetterSeq sub = w;
          sub[i] = l;
          out.push_back(std::move(sub));
        }
      }
    }
  }
  return out;
}

// 6. Named languages against their definitions over Sigma = {0,1}.
Verdict named_languages_exhaustive() {
  Tally t;
  const std::vector<Letter> sigma = L("01");
  std::size_t words = 0;
  std::ostringstream scope;

  // Grid languages: their whole alphabet {0,1,B,C}, every word of length <= 10.
  {
    const PdaDecider d1(make_named("D1", sigma)), d2(make_named("D2", sigma)), c(make_named("C", sigma));
    each_word(L("01BC"), 10, [&](const LetterSeq& s) {
      const auto n = oracle::names(s);
      const Word w = Word::finite(s);
      ++words;
      auto what = [&] { return "grid word " + to_string(s); };
      t.check(d1.accepts(w) == oracle::d1(n), what);
      t.check(d2.accepts(w) == oracle::d2(n), what);
      t.check(c.accepts(w) == oracle::c_lang(n), what);
    });
    scope << "D1,D2,C: all " << words << " words of length <= 10 over {0,1,B,C}";
  }

  // L^x only distinguishes a, b and x. When the automaton is invariant under
  // swapping any two other letters, {a,b,x,y} covers every word.
  const std::vector<Letter> bullet = make_named("L", sigma).alphabet;
  const char* runs[] = {"B", "C", "D", "E"};
  std::size_t lx_words = 0;
  for (const char* x : runs) {
    const Pda p = make_named(std::string("L^") + x, sigma);
    const Letter lx = Letter::plain(x);
    const Letter rep = Letter::plain(x == std::string("B") ? "C" : "B");
    for (const auto& l : bullet)
      if (l.name != "a" && l.name != "b" && !(l == lx) && !(l == rep))
        t.check(swap_invariant(p, rep, l), [&] { return std::string("L^") + x + " not symmetric in " + l.name; });
    const PdaDecider d(p);
    each_word({Letter::plain("a"), Letter::plain("b"), lx, rep}, 10, [&](const LetterSeq& s) {
      ++lx_words;
      t.check(d.accepts(Word::finite(s)) == oracle::l_run(oracle::names(s), x),
              [&] { return std::string("L^") + x + " on " + to_string(s); });
    });
  }
  scope << "; L^x: " << lx_words << " words of length <= 10 over {a,b,x,y}, complete by letter symmetry";

  // The pair languages and L use all eight markers; 9^10 words are out of
  // reach, so: full alphabet up to length 6, {0,1} symmetry, and the shape
  // neighbourhood at any length.
  struct Named {
    std::string name;
    std::function<bool(const std::vector<std::string>&)> def;
  };
  const std::vector<Named> rest{{"L^(B,C)", [](const auto& n) { return oracle::l_pair(n, 0); }},
                                {"L^(C,D)", [](const auto& n) { return oracle::l_pair(n, 1); }},
                                {"L^(D,E)", [](const auto& n) { return oracle::l_pair(n, 2); }},
                                {"L", [](const auto& n) { return oracle::l_union(n); }}};
  std::vector<Letter> nine;
  for (const auto& l : bullet)
    if (l.name != "1") nine.push_back(l);
  const auto near = shape_neighbourhood(nine);
  std::size_t short_words = 0;
  for (const auto& r : rest) {
    const Pda p = make_named(r.name, sigma);
    t.check(swap_invariant(p, Letter::plain("0"), Letter::plain("1")), [&] { return r.name + " not symmetric in 0,1"; });
    const PdaDecider d(p);
    each_word(nine, 6, [&](const LetterSeq& s) {
      ++short_words;
      t.check(d.accepts(Word::finite(s)) == r.def(oracle::names(s)), [&] { return r.name + " on " + to_string(s); });
    });
    for (const auto& s : near)
      t.check(d.accepts(Word::finite(s)) == r.def(oracle::names(s)), [&] { return r.name + " on " + to_string(s); });
  }
  scope << "; L^(B,C),L^(C,D),L^(D,E),L: " << short_words << " words of length <= 6 plus " << near.size() * rest.size()
        << " shape-neighbourhood words (reduced scope, length <= 10 over 10 letters infeasible)";
  return t.verdict(scope.str());
}

// 7. C^e against the shape checker and L-membership.
Verdict ce_witnesses() {
  Tally t;
  const Pda ce = build_ce(witness::balanced_blocks_pda(), L("01"));
  const PdaDecider d(ce);
  witness::Builder builder(7007);
  using witness::Kind;
  std::size_t n = 0, accepted = 0;
  for (int round = 0; round < 30; ++round)
    for (Kind k : {Kind::Valid, Kind::BadD1, Kind::BadD2, Kind::BadShape, Kind::OutsideL, Kind::StemOnly}) {
      const auto w = builder.make(k);
      const bool expect = oracle::ce_member(w.word, oracle::balanced_blocks);
      const bool got = d.accepts(w.word);
      ++n;
      accepted += got;
      t.check(got == expect, [&] { return std::string(witness::name(k)) + " " + to_string(w.word); });
      if (k != Kind::StemOnly)
        t.check(expect == (k == Kind::Valid), [&] { return std::string("checker on ") + witness::name(k); });
    }
  return t.verdict(std::to_string(n) + " witnesses (6 kinds), L = (0^n 1^n)^omega, " + std::to_string(accepted) +
                   " accepted");
}

// Infinitely many x, or a finite word ending in x.
Pda many_x() {
  FiniteAutomaton f;
  f.alphabet = L("xy");
  f.add_state("other");
  f.add_state("saw_x", true, true);
  for (std::uint32_t s = 0; s < 2; ++s) {
    f.add(s, Letter::plain("x"), 1);
    f.add(s, Letter::plain("y"), 0);
  }
  return to_pda(f);
}

// 8. Bullet automata against bullet membership.
Verdict bullet_cross_validation() {
  Tally t;
  struct Case {
    ExprPtr bullet;
    Pda pda;
  };
  std::vector<Case> cases;
  {
    const ExprPtr sum = make_sum(make_empty(), make_empty());
    const Pda p = build_sum_pda(empty_pda({}), empty_pda({}), sum->plus, sum->minus, universal_pda({}));
    cases.push_back({make_bullet(sum), build_bullet_pda(p)});
  }
  {
    const ExprPtr tl = make_tilde(make_atom("many_x", std::make_shared<PdaLanguage>(many_x())));
    cases.push_back({make_bullet(tl), build_bullet_pda(build_tilde_pda(many_x(), tl->eraser))});
  }
  std::mt19937 rng(8008);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const Markers m = Markers::level(1);
  std::size_t decodable = 0, junk = 0, in = 0;
  for (const auto& c : cases) {
    const PdaDecider d(c.pda);
    std::vector<Letter> pool = c.bullet->base->alphabet;
    for (int i = 0; i < 300; ++i) {
      const unsigned n = static_cast<unsigned>(pick(1, 3));
      std::vector<Letter> letters = pool;
      for (unsigned j = 1; j <= n; ++j) letters.push_back(Letter::erase(c.bullet->offset + j));
      auto seq = [&](int lo, int hi) {
        LetterSeq s;
        for (int k = pick(lo, hi); k > 0; --k) s.push_back(letters[static_cast<std::size_t>(pick(0, static_cast<int>(letters.size()) - 1))]);
        return s;
      };
      LetterSeq stem = seq(0, 4), period = seq(1, 4);
      const bool make_junk = i % 3 == 0;
      if (make_junk) {
        // One well-shaped segment with unequal counts, or coding an eraser
        // beyond n.
        std::string code = "α";
        const int k = pick(1, 3);
        int counts[4] = {k, k, k, k};
        if (pick(0, 3) == 0) {
          for (int& cnt : counts) cnt = static_cast<int>(n) + 1;
        } else {
          counts[pick(0, 3)] += 1;
        }
        const char* runs[] = {"B", "C", "D", "E"};
        for (int r = 0; r < 4; ++r) code.append(static_cast<std::size_t>(counts[r]), runs[r][0]);
        code += "β";
        const LetterSeq seg = parse_letters(code);
        LetterSeq& part = pick(0, 1) ? stem : period;
        part.insert(part.begin() + pick(0, static_cast<int>(part.size())), seg.begin(), seg.end());
      }
      const Word inner = encode_erasers(Word::up(stem, period), m, c.bullet->offset);
      LetterSeq head(n, Letter::plain("a"));
      head.push_back(Letter::plain("b"));
      const Word w = concat(head, inner);
      const CodeScan scan = scan_codes(inner, n, m, c.bullet->offset);
      const Membership mem = member(c.bullet, w);
      if (mem == Membership::Unsupported) continue;
      if (scan.junk) ++junk;
      else if (scan.well_shaped && !make_junk) ++decodable;
      in += mem == Membership::In;
      t.check(d.accepts(w) == (mem == Membership::In), [&] { return serialize(c.bullet) + " on " + to_string(w); });
    }
  }
  const bool enough = decodable >= 200 && junk >= 50;
  if (!enough) t.check(false, [&] { return std::string("too few decided words"); });
  return t.verdict(std::to_string(decodable) + " decodable + " + std::to_string(junk) + " junk UP words, " +
                   std::to_string(in) + " members, 2 base expressions");
}

// Grids over {0,1}: every grid of depth <= 4, then `random_per_depth`
// random grids for each depth 5..8.
void each_grid(std::mt19937& rng, int random_per_depth, const std::function<void(const GridPrefix&)>& f) {
  for (unsigned depth = 1; depth <= 8; ++depth) {
    const unsigned cells = depth * (depth + 1) / 2;
    auto fill = [&](auto bit_of) {
      GridPrefix g(depth);
      unsigned bit = 0;
      for (unsigned m = 1; m <= depth; ++m)
        for (unsigned n = 1; m + n <= depth + 1; ++n) g.set(m, n, Letter::plain(bit_of(bit++) ? "1" : "0"));
      f(g);
    };
    if (depth <= 4)
      for (unsigned mask = 0; mask < (1u << cells); ++mask) fill([&](unsigned b) { return (mask >> b) & 1; });
    else
      for (int i = 0; i < random_per_depth; ++i) fill([&](unsigned) { return rng() % 2 == 1; });
  }
}

// 9. h_prefix / h_decode and the complement automata.
Verdict h_coding() {
  Tally t;
  const std::vector<Letter> sigma = L("01");
  const PdaDecider c(make_named("C", sigma)), c1(make_named("C1", sigma)), c2(make_named("C2", sigma));
  const Letter zero = Letter::plain("0"), sep_c = Letter::plain("C"), sep_b = Letter::plain("B");
  std::mt19937 rng(9009);
  std::size_t exhaustive = 0, random = 0;
  each_grid(rng, 50, [&](const GridPrefix& g) {
    (g.depth() <= 4 ? exhaustive : random) += 1;
    const LetterSeq w = h_prefix(g);
    const auto d = h_decode(w);
    auto what = [&] { return to_string(w); };
    t.check(d.grid && *d.grid == g, what);
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] == sep_c || w[i] == sep_b)
        t.check(!c.accepts(Word::finite(LetterSeq(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)))), what);
    const unsigned k = g.depth();
    const Letter next = k % 2 ? sep_b : sep_c, after = k % 2 ? sep_c : sep_b;
    LetterSeq closed = w;
    closed.insert(closed.end(), k + 1, zero);
    closed.push_back(next);
    t.check(!c1.accepts(Word::up(w, {zero, next, zero, after})), what);
    t.check(!c2.accepts(Word::up(w, {zero})), what);
    t.check(!c2.accepts(Word::up(closed, {zero})), what);
  });
  return t.verdict(std::to_string(exhaustive) + " grids of depth <= 4 (all), " + std::to_string(random) +
                   " random grids of depth 5..8; complement parts reject every continuation tried");
}

// 10. Order, sum, base_pow and H laws.
Verdict ordinal_laws() {
  Tally t;
  std::mt19937_64 rng(1010);
  const std::size_t n = 10000;
  for (std::size_t i = 0; i < n; ++i) {
    const Ordinal a = wf_test::random_ordinal(rng, Base::Omega1, 3, 5, 6);
    const Ordinal b = wf_test::random_ordinal(rng, Base::Omega1, 3, 5, 6);
    const Ordinal c = wf_test::random_ordinal(rng, Base::Omega1, 3, 5, 6);
    auto what = [&] { return to_string(a) + " | " + to_string(b) + " | " + to_string(c); };
    const int lt = a < b, eq = a == b, gt = b < a;
    t.check(lt + eq + gt == 1, what);
    if (a < b && b < c) t.check(a < c, what);
    t.check((a + b) + c == a + (b + c), what);
    // Left absorption: w^e swallows every smaller ordinal on its left.
    const Ordinal pc = base_pow(c);
    if (a < pc) t.check(a + pc == pc, what);
    if (a < b) t.check(base_pow(a) < base_pow(b), what);
    const Ordinal x = wf_test::random_ordinal(rng, Base::Omega, 3, 5, 6);
    const Ordinal y = wf_test::random_ordinal(rng, Base::Omega, 3, 5, 6);
    if (!x.is_zero() && !y.is_zero() && x < y) t.check(h_map(x) < h_map(y), what);
  }
  return t.verdict(std::to_string(n) + " random triples, " + std::to_string(t.checks()) + " law instances");
}

// Atom decided by a predicate, so referee checks do not depend on automata.
class Predicate : public AtomLanguage {
public:
  Predicate(std::vector<Letter> alphabet, std::function<bool(const Word&)> f)
      : alphabet_(std::move(alphabet)), f_(std::move(f)) {}
  std::vector<Letter> alphabet() const override { return alphabet_; }
  Membership member(const Word& w) const override { return f_(w) ? Membership::In : Membership::Out; }

private:
  std::vector<Letter> alphabet_;
  std::function<bool(const Word&)> f_;
};

const Letter ka = Letter::plain("a"), kb = Letter::plain("b");

bool many_a(const Word& w) {
  const LetterSeq& tail = w.is_finite() ? w.stem() : w.period();
  if (w.is_finite()) return !tail.empty() && tail.back() == ka;
  return std::find(tail.begin(), tail.end(), ka) != tail.end();
}

bool even_b(const Word& w) {
  return w.is_finite() && std::count(w.stem().begin(), w.stem().end(), kb) % 2 == 0;
}

ExprPtr predicate_atom(const char* id, bool (*f)(const Word&)) {
  return make_atom(id, std::make_shared<Predicate>(std::vector<Letter>{ka, kb}, f));
}

// 11. Copy strategy and the referee.
Verdict game_harness() {
  Tally t;
  const ExprPtr m = predicate_atom("many_a", many_a), e = predicate_atom("even_b", even_b);
  const std::vector<ExprPtr> exprs{m, make_complement(e), make_sum(m, e), make_tilde(m),
                                   make_bullet(make_sum(make_empty(), make_empty()))};
  const Strategy copy = builtin_strategy("copy");
  std::size_t plays = 0;
  for (const auto& x : exprs)
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const std::size_t declare = seed % 3 == 0 ? 0 : 1 + seed % 40;
      const PlayResult r = play(x, x, random_strategy(seed, 250, declare), copy, 50);
      ++plays;
      t.check(r.y == r.x && r.outcome == Outcome::P2Wins,
              [&] { return serialize(x) + " seed " + std::to_string(seed) + " " + to_string(r.outcome); });
    }

  // Brute force: every pair of scripts over {a, b, skip, tail b} up to 4 rounds.
  const std::vector<Move> choices{Move::write(ka), Move::write(kb), Move::skip(), Move::declare_tail({kb})};
  auto word_of = [](const std::vector<Move>& moves) {
    LetterSeq letters;
    for (const auto& mv : moves) {
      if (mv.kind == Move::Kind::Letter) letters.push_back(mv.letter);
      if (mv.kind == Move::Kind::DeclareTail) return Word::up(letters, mv.period);
    }
    return Word::finite(letters);
  };
  std::size_t games = 0;
  for (std::size_t rounds = 1; rounds <= 4; ++rounds) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < rounds; ++i) total *= choices.size();
    auto script = [&](std::size_t code) {
      std::vector<Move> s;
      for (std::size_t i = 0; i < rounds; ++i, code /= choices.size()) s.push_back(choices[code % choices.size()]);
      return s;
    };
    for (std::size_t i = 0; i < total; ++i)
      for (std::size_t j = 0; j < total; ++j) {
        const auto xs = script(i), ys = script(j);
        const Outcome expect = many_a(word_of(xs)) == even_b(word_of(ys)) ? Outcome::P2Wins : Outcome::P1Wins;
        ++games;
        t.check(play(m, e, scripted_strategy(xs), scripted_strategy(ys), rounds).outcome == expect,
                [&] { return "brute force game " + std::to_string(games); });
      }
  }
  return t.verdict(std::to_string(plays) + " copy plays (100 adversaries x 5 expressions), " + std::to_string(games) +
                   " brute-force games up to 4 rounds");
}

struct Criterion {
  int id;
  const char* name;
  Verdict (*run)();
  double max_seconds; // 0: no bound
};

} // namespace

int main() {
  const Criterion criteria[] = {
      {1, "H-map golden examples", h_golden, 1},
      {2, "eraser golden examples", eraser_golden, 1},
      {3, "degree chain", degree_chain, 1},
      {4, "Omega round trip", omega_round_trip, 10},
      {5, "UP eraser evaluation vs prefix oracle", up_eval_oracle, 30},
      {6, "named languages vs definitions", named_languages_exhaustive, 60},
      {7, "C^e shape witnesses", ce_witnesses, 0},
      {8, "bullet automaton vs membership", bullet_cross_validation, 0},
      {9, "h coding", h_coding, 0},
      {10, "ordinal laws", ordinal_laws, 10},
      {11, "game harness", game_harness, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[64];
    if (c.max_seconds > 0) {
      std::snprintf(timing, sizeof timing, "%.2f s, bound %.0f s", secs, c.max_seconds);
      if (secs >= c.max_seconds) v.ok = false;
    } else {
      std::snprintf(timing, sizeof timing, "%.2f s", secs);
    }
    failed += !v.ok;
    std::printf("%s [%d] %s: %s (%s)\n", v.ok ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), timing);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
