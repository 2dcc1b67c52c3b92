#include "wadgeforge/pda.hpp"

#include "wadgeforge/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace wadgeforge {

namespace {

std::vector<Letter> merged(std::vector<Letter> a, const std::vector<Letter>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<Letter> minus_set(const std::vector<Letter>& a, const std::vector<Letter>& b) {
  std::vector<Letter> out;
  for (const auto& l : a)
    if (!std::binary_search(b.begin(), b.end(), l)) out.push_back(l);
  return out;
}

// small* l (l in `letters`), then `lang` on the rest with the letters
// outside its alphabet deleted.
Pda branch(const std::vector<Letter>& small, const std::vector<Letter>& letters, const Pda& lang,
           const std::vector<Letter>& full) {
  FiniteAutomaton head;
  const auto scan = head.add_state("scan");
  const auto hit = head.add_state("hit", true);
  head.initial = scan;
  for (const auto& l : small) head.add(scan, l, scan);
  for (const auto& l : letters) head.add(scan, l, hit);
  const auto ignored = minus_set(full, lang.alphabet);
  return concat_left_regular(head, ignored.empty() ? lang : ignore_letters(lang, ignored));
}

// The automaton a embedded so that its survivors can be interleaved with
// erased blocks. Control states:
//  - main(q, t): a is in q; t = 1 when a has read a letter since the last
//    counted Buchi visit;
//  - chk(q), q Buchi: the only Buchi copies of a's states, entered from
//    main(q, 1), so every counted visit is paid for by a letter of a;
//  - fresh(q): no survivor read yet (tilde only);
//  - tail: a has stopped in a final state and only erased blocks follow.
// A new bottom symbol lies below a's stack, so blocks can still be pushed
// when a empties its own stack. "Level" tops are a's symbols and that
// bottom: no erased block is pending.
struct Skeleton {
  Pda out;
  std::uint32_t zero = 0;
  std::uint32_t start = 0;
  std::vector<std::uint32_t> level_tops;
  struct Host {
    std::uint32_t state;
    bool fresh;
  };
  // Every host gets its own block machinery that returns to it.
  std::vector<Host> hosts;
  // (state, host index): states that may open a block for a host.
  std::vector<std::pair<std::uint32_t, std::size_t>> openers;
};

Skeleton skeleton(const Pda& a, bool with_fresh) {
  validate(a);
  Skeleton k;
  Pda& out = k.out;
  for (const auto& s : a.stack) out.add_symbol("A." + s);
  k.zero = out.add_symbol("Z0");
  for (std::uint32_t x = 0; x <= k.zero; ++x) k.level_tops.push_back(x);
  out.add_letters(a.alphabet);
  const std::size_t n = a.states.size();
  std::vector<std::uint32_t> main[2], chk(n), fresh(n);
  for (int t = 0; t < 2; ++t)
    for (std::size_t q = 0; q < n; ++q) main[t].push_back(out.add_state(a.states[q] + "|" + std::to_string(t)));
  for (std::size_t q = 0; q < n; ++q)
    if (a.buchi[q]) chk[q] = out.add_state(a.states[q] + "|chk", false, true);
  if (with_fresh)
    for (std::size_t q = 0; q < n; ++q) fresh[q] = out.add_state(a.states[q] + "|fresh");
  const auto acc = out.add_state("acc", true);
  const auto tail_main = out.add_state("tail");
  const auto tail_top = out.add_state("tail*", false, true);
  std::uint32_t tail_fresh_main = 0, tail_fresh_top = 0;
  if (with_fresh) {
    tail_fresh_main = out.add_state("tail|fresh");
    tail_fresh_top = out.add_state("tail*|fresh", false, true);
  }
  k.start = with_fresh ? fresh[a.initial] : main[0][a.initial];

  for (const auto& tr : a.transitions) {
    const bool reads = tr.letter.has_value();
    for (int t = 0; t < 2; ++t) out.add(main[t][tr.from], tr.letter, tr.top, main[reads ? 1 : t][tr.to], tr.push);
    if (a.buchi[tr.from]) out.add(chk[tr.from], tr.letter, tr.top, main[reads ? 1 : 0][tr.to], tr.push);
    if (with_fresh) out.add(fresh[tr.from], tr.letter, tr.top, reads ? main[1][tr.to] : fresh[tr.to], tr.push);
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (a.buchi[q])
      for (std::uint32_t x = 0; x < a.stack.size(); ++x) out.add(main[1][q], std::nullopt, x, chk[q], {x});
    if (!a.final[q]) continue;
    for (auto x : k.level_tops) {
      for (int t = 0; t < 2; ++t) {
        out.add(main[t][q], std::nullopt, x, acc, {x});
        out.add(main[t][q], std::nullopt, x, tail_top, {x});
      }
      if (with_fresh) {
        out.add(fresh[q], std::nullopt, x, acc, {x});
        out.add(fresh[q], std::nullopt, x, tail_fresh_top, {x});
      }
    }
  }
  for (auto x : k.level_tops) {
    out.add(tail_main, std::nullopt, x, tail_top, {x});
    if (with_fresh) out.add(tail_fresh_main, std::nullopt, x, tail_fresh_top, {x});
  }

  auto host = [&](std::uint32_t s, bool f) {
    k.hosts.push_back({s, f});
    k.openers.push_back({s, k.hosts.size() - 1});
    return k.hosts.size() - 1;
  };
  for (int t = 0; t < 2; ++t)
    for (std::size_t q = 0; q < n; ++q) host(main[t][q], false);
  if (with_fresh)
    for (std::size_t q = 0; q < n; ++q) host(fresh[q], true);
  k.openers.push_back({tail_top, host(tail_main, false)});
  if (with_fresh) k.openers.push_back({tail_fresh_top, host(tail_fresh_main, true)});
  return k;
}

} // namespace

Pda build_d_pda(const Pda& a, const Letter& d) {
  if (std::binary_search(a.alphabet.begin(), a.alphabet.end(), d))
    throw PreconditionError("letter " + to_string(d) + " is already in the automaton's alphabet");
  Pda out = ignore_letters(a, {d});
  // Only omega-words belong to A^d.
  std::fill(out.final.begin(), out.final.end(), false);
  if (!out.has_buchi()) out.add_state("dead", false, true);
  return out;
}

Pda build_sum_pda(const Pda& b, const Pda& a, const std::vector<Letter>& plus, const std::vector<Letter>& minus,
                  const Pda& b_dual) {
  const std::vector<Letter> full = merged(merged(merged(a.alphabet, b.alphabet), plus), minus);
  std::vector<Letter> minus_sorted = merged(minus, {});
  for (const auto& l : minus_sorted)
    if (std::binary_search(a.alphabet.begin(), a.alphabet.end(), l))
      throw PreconditionError("minus letter " + to_string(l) + " is in the small alphabet");
  const std::vector<Letter> plus_eff = minus_set(minus_set(full, a.alphabet), minus_sorted);
  Pda out = a;
  out.add_letters(full);
  if (!plus_eff.empty()) out = pda_union(out, branch(a.alphabet, plus_eff, b, full));
  if (!minus_sorted.empty()) out = pda_union(out, branch(a.alphabet, minus_sorted, b_dual, full));
  out.add_letters(full);
  return out;
}

// An erased letter is guessed when read and pushes M; the eraser pops it.
// Blocks of erased letters sit above a's stack, so survivors are read only
// when no block is open. With Tilde, an eraser read while no survivor
// exists is a no-op.
Pda build_tilde_pda(const Pda& a, unsigned eraser, EraseMode mode) {
  const Letter er = Letter::erase(eraser);
  if (std::binary_search(a.alphabet.begin(), a.alphabet.end(), er))
    throw PreconditionError("eraser " + to_string(er) + " is already in the automaton's alphabet");
  const bool tilde = mode == EraseMode::Tilde;
  Skeleton k = skeleton(a, tilde);
  Pda& out = k.out;
  const auto m = out.add_symbol("M");
  out.add_letters({er});
  const auto letters = a.alphabet;
  std::vector<std::uint32_t> block;
  for (std::size_t h = 0; h < k.hosts.size(); ++h) {
    const auto s = out.add_state(out.states[k.hosts[h].state] + "|block");
    block.push_back(s);
    for (const auto& l : letters) {
      out.add(s, l, m, s, {m, m});
      for (auto x : k.level_tops) out.add(s, l, x, s, {m, x});
    }
    out.add(s, er, m, s, {});
    for (auto x : k.level_tops) out.add(s, std::nullopt, x, k.hosts[h].state, {x});
  }
  for (const auto& [from, h] : k.openers) {
    for (const auto& l : letters)
      for (auto x : k.level_tops) out.add(from, l, x, block[h], {m, x});
    if (k.hosts[h].fresh)
      for (auto x : k.level_tops) out.add(from, er, x, k.hosts[h].state, {x});
  }
  const auto init = out.add_state("init");
  out.initial = init;
  out.bottom = k.zero;
  out.add(init, std::nullopt, k.zero, k.start, {a.bottom, k.zero});
  return out;
}

// Staged evaluation as a nesting: every erased item (a letter, or the code
// of an eraser) is matched by a later acting eraser code of index j, the
// item is erased at stage j, and items nested inside the pair are erased
// at stages >= j. An erased eraser of index i needs stage > i.
//
// Stack coding of an erased item of stage s: H then U^s (U on top). Codes
// alpha B^j C^j D^j E^j beta of an acting eraser:
//  - B^j pops exactly j U's, then C pops the H;
//  - C is otherwise ignored;
//  - D^j and E^j check the enclosing item (stage b) for b <= j and leave it
//    intact: D pops b U's, then pushes a T per remaining D; E pops the T's,
//    then pushes the b U's back. With no enclosing item they are free.
// Codes with unequal counts or an index above n are junk and accepted by
// the junk part, so the supremum part may be loose on them.
Pda build_bullet_pda(const Pda& a, unsigned level) {
  const Markers mk = Markers::level(level);
  for (const auto& n : mk.all())
    if (std::binary_search(a.alphabet.begin(), a.alphabet.end(), Letter::plain(n)))
      throw PreconditionError("bullet marker " + n + " is in the automaton's alphabet");
  const Letter la = Letter::plain(mk.a), lb = Letter::plain(mk.b), alpha = Letter::plain(mk.alpha),
               beta = Letter::plain(mk.beta), B = Letter::plain(mk.B), C = Letter::plain(mk.C),
               D = Letter::plain(mk.D), E = Letter::plain(mk.E);
  Skeleton k = skeleton(a, false);
  Pda& out = k.out;
  const auto H = out.add_symbol("H"), U = out.add_symbol("U"), T = out.add_symbol("T");
  std::vector<std::uint32_t> open_tops = k.level_tops;
  open_tops.push_back(U);
  for (const auto& n : mk.all()) out.add_letters({Letter::plain(n)});

  struct Block {
    std::uint32_t stage, ecB0, ecB, ecC, ecD, ecE, act, actC, dU, dT, eT, eU, dfree, efree;
  };
  std::vector<Block> blocks;
  for (std::size_t h = 0; h < k.hosts.size(); ++h) {
    const std::uint32_t home = k.hosts[h].state;
    const std::string p = out.states[home] + "|";
    auto st = [&](const char* name) { return out.add_state(p + name); };
    Block bl{st("stage"), st("ecB0"), st("ecB"), st("ecC"), st("ecD"), st("ecE"), st("act"),
             st("actC"),  st("dU"),   st("dT"),  st("eT"),  st("eU"),  st("dfree"), st("efree")};
    // Stage guess: at least the U already pushed, any number more.
    out.add(bl.stage, std::nullopt, U, bl.stage, {U, U});
    out.add(bl.stage, std::nullopt, U, home, {U});
    // Erased eraser code: H, U per B, one more U at beta.
    out.add(bl.ecB0, B, H, bl.ecB, {U, H});
    out.add(bl.ecB, B, U, bl.ecB, {U, U});
    out.add(bl.ecB, C, U, bl.ecC, {U});
    out.add(bl.ecC, C, U, bl.ecC, {U});
    out.add(bl.ecC, D, U, bl.ecD, {U});
    out.add(bl.ecD, D, U, bl.ecD, {U});
    out.add(bl.ecD, E, U, bl.ecE, {U});
    out.add(bl.ecE, E, U, bl.ecE, {U});
    out.add(bl.ecE, beta, U, bl.stage, {U, U});
    // Acting eraser code.
    out.add(bl.act, B, U, bl.act, {});
    out.add(bl.act, C, H, bl.actC, {});
    for (auto x : open_tops) out.add(bl.actC, C, x, bl.actC, {x});
    out.add(bl.actC, D, U, bl.dU, {});
    for (auto x : k.level_tops) out.add(bl.actC, D, x, bl.dfree, {x});
    out.add(bl.dU, D, U, bl.dU, {});
    out.add(bl.dU, D, H, bl.dT, {T, H});
    out.add(bl.dT, D, T, bl.dT, {T, T});
    out.add(bl.dU, E, H, bl.eU, {U, H});
    out.add(bl.dT, E, T, bl.eT, {});
    out.add(bl.eT, E, T, bl.eT, {});
    out.add(bl.eT, E, H, bl.eU, {U, H});
    out.add(bl.eU, E, U, bl.eU, {U, U});
    out.add(bl.eU, beta, U, home, {U});
    for (auto x : k.level_tops) {
      out.add(bl.dfree, D, x, bl.dfree, {x});
      out.add(bl.dfree, E, x, bl.efree, {x});
      out.add(bl.efree, E, x, bl.efree, {x});
      out.add(bl.efree, beta, x, home, {x});
    }
    blocks.push_back(bl);
  }
  for (const auto& [from, h] : k.openers) {
    const Block& bl = blocks[h];
    for (auto x : open_tops) {
      for (const auto& l : a.alphabet) out.add(from, l, x, bl.stage, {U, H, x});
      out.add(from, alpha, x, bl.ecB0, {H, x});
    }
    out.add(from, alpha, U, bl.act, {U});
  }
  // Survivors are read by a's transitions, which need one of a's symbols on
  // top, so no item is pending then.
  const auto pre0 = out.add_state("pre0");
  const auto pre1 = out.add_state("pre1");
  out.initial = pre0;
  out.bottom = k.zero;
  out.add(pre0, la, k.zero, pre1, {k.zero});
  out.add(pre1, la, k.zero, pre1, {k.zero});
  out.add(pre1, lb, k.zero, k.start, {a.bottom, k.zero});

  // Junk: L followed by anything.
  std::vector<Letter> sigma = a.alphabet;
  Pda junk = l_language(sigma, level);
  const auto any = junk.add_state("any", true, true);
  const std::vector<Letter> full = merged(out.alphabet, junk.alphabet);
  for (std::uint32_t x = 0; x < junk.stack.size(); ++x) {
    for (std::uint32_t q = 0; q + 1 < junk.states.size(); ++q)
      if (junk.final[q]) junk.add(q, std::nullopt, x, any, {x});
    for (const auto& l : full) junk.add(any, l, x, any, {x});
  }
  return intersect_regular(pda_union(out, junk), r_automaton(sigma, level));
}

PdaLanguage::PdaLanguage(Pda p) : pda_(std::move(p)), decider_(pda_) {}

std::vector<Letter> PdaLanguage::alphabet() const { return pda_.alphabet; }

Membership PdaLanguage::member(const Word& w) const {
  return decider_.accepts(w) ? Membership::In : Membership::Out;
}

AtomPtr resolve_atom(const std::string& id) {
  if (id.rfind("file:", 0) == 0) {
    const std::string path = id.substr(5);
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot read automaton file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return std::make_shared<PdaLanguage>(parse_pda(text.str()));
  }
  if (id.rfind("named:", 0) == 0) {
    const std::string rest = id.substr(6);
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos) throw ParseError("expected named:<name>:<letters> in " + id);
    return std::make_shared<PdaLanguage>(make_named(rest.substr(0, colon), parse_letters(rest.substr(colon + 1))));
  }
  return nullptr;
}

} // namespace wadgeforge
