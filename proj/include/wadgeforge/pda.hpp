#pragma once

#include "wadgeforge/concil.hpp"
#include "wadgeforge/words.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wadgeforge {

/// (from, letter or silent, top) -> (to, push). push replaces the top
/// symbol; push[0] is the new top and an empty push pops.
struct PdaTransition {
  std::uint32_t from = 0;
  std::optional<Letter> letter;
  std::uint32_t top = 0;
  std::uint32_t to = 0;
  std::vector<std::uint32_t> push;
};

/// Nondeterministic pushdown automaton. Finite words are accepted by final
/// state with any stack; omega-words by visiting a Buchi state infinitely
/// often while reading every letter. A run blocks on an empty stack.
struct Pda {
  std::vector<std::string> states;
  std::vector<std::string> stack;
  /// Sorted and duplicate-free.
  std::vector<Letter> alphabet;
  std::uint32_t initial = 0;
  std::uint32_t bottom = 0;
  std::vector<PdaTransition> transitions;
  std::vector<bool> final;
  std::vector<bool> buchi;

  std::uint32_t add_state(std::string name, bool is_final = false, bool is_buchi = false);
  std::uint32_t add_symbol(std::string name);
  void add_letters(const std::vector<Letter>& letters);
  void add(std::uint32_t from, std::optional<Letter> letter, std::uint32_t top, std::uint32_t to,
           std::vector<std::uint32_t> push);

  bool has_final() const;
  bool has_buchi() const;
};

/// Throws AutomatonError on dangling references, an empty acceptance
/// condition, or a silent cycle that leaves the stack unchanged.
void validate(const Pda& p);

/// Finite automaton; `final` is used on finite words and `buchi` on
/// omega-words.
struct FiniteAutomaton {
  struct Edge {
    std::uint32_t from;
    Letter letter;
    std::uint32_t to;
  };
  std::vector<std::string> states;
  std::vector<Letter> alphabet;
  std::uint32_t initial = 0;
  std::vector<Edge> edges;
  std::vector<bool> final;
  std::vector<bool> buchi;

  std::uint32_t add_state(std::string name, bool is_final = false, bool is_buchi = false);
  void add(std::uint32_t from, const Letter& letter, std::uint32_t to);
};

/// The automaton as a pushdown automaton that never touches its stack.
Pda to_pda(const FiniteAutomaton& a);

/// Exact acceptance decisions. Both throw AlphabetError on a letter outside
/// the automaton's alphabet.
bool accepts_finite(const Pda& p, const Word& w);
bool accepts_up(const Pda& p, const Word& w);
bool accepts(const Pda& p, const Word& w);

/// Reusable decider: indexes the transitions once for repeated queries.
class PdaDecider {
public:
  explicit PdaDecider(const Pda& p);
  ~PdaDecider();
  PdaDecider(PdaDecider&&) noexcept;
  PdaDecider& operator=(PdaDecider&&) noexcept;

  bool accepts(const Word& w) const;
  const std::vector<Letter>& alphabet() const;

  /// Indexed transitions; defined with the search.
  struct Impl;

private:
  std::unique_ptr<Impl> impl_;
};

/// Closures. Alphabets are merged; states and stack symbols are renamed
/// apart with prefixes.
Pda pda_union(const Pda& p, const Pda& q);
Pda intersect_regular(const Pda& p, const FiniteAutomaton& r);
/// r is read on finite words, then p runs from its initial configuration.
Pda concat_left_regular(const FiniteAutomaton& r, const Pda& p);
/// Lambda-free context-free substitution: each letter a of p is replaced by
/// a word of sigma.at(a), accepted by final state. Letters missing from the
/// map are kept. Throws PreconditionError if some image accepts the empty
/// word.
Pda substitute(const Pda& p, const std::map<Letter, Pda>& sigma);
/// Accepts x iff x with every letter of `ignored` deleted is accepted by p;
/// omega-words whose deletion is finite need a final state of p.
Pda ignore_letters(const Pda& p, const std::vector<Letter>& ignored);

/// Named languages. `sigma` is the base alphabet; the bullet languages use
/// the level-1 markers a, b, alpha, beta, B, C, D, E and the grid languages
/// use C and B. Names: D1 D2 D C C1 C2 h_complement L^B L^C L^D L^E L^(B,C)
/// L^(C,D) L^(D,E) L R. Throws PreconditionError on an unknown name.
Pda make_named(std::string_view name, const std::vector<Letter>& sigma);
std::vector<std::string> named_languages();

/// The union of the seven L^x languages over the markers of a bullet level.
Pda l_language(const std::vector<Letter>& sigma, unsigned level);

/// R = a+ b (Sigma | alpha B+ C+ D+ E+ beta)^{<=omega} over the markers of
/// the given bullet level.
FiniteAutomaton r_automaton(const std::vector<Letter>& sigma, unsigned level = 1);

/// (Sigma* C Sigma* B)* (Sigma* C) [g(L) & (Sigma* B Sigma* C)^omega] with
/// g(a) = a.D.
Pda build_ce(const Pda& l, const std::vector<Letter>& sigma);
/// build_ce(l) united with the complement of the omega^2 coding.
Pda build_sigma_omega_complete(const Pda& l, const std::vector<Letter>& sigma);

/// A^d over alphabet(a) + d (omega-words only).
Pda build_d_pda(const Pda& a, const Letter& d);
/// B + A. Letters of b outside a's alphabet and outside `minus` are plus
/// letters; b_dual accepts the complement of b over b's alphabet.
Pda build_sum_pda(const Pda& b, const Pda& a, const std::vector<Letter>& plus,
                  const std::vector<Letter>& minus, const Pda& b_dual);
/// A^~ (or A^~~ for EraseMode::Approx) with eraser `eraser`.
Pda build_tilde_pda(const Pda& a, unsigned eraser, EraseMode mode = EraseMode::Tilde);
/// A^bullet: the coded supremum of the A^{~~.n} plus the junk language,
/// intersected with R. Eraser codes are relative to the largest eraser of
/// a's alphabet, so the automaton does not depend on that offset.
Pda build_bullet_pda(const Pda& a, unsigned level = 1);

/// The empty and the universal language over an alphabet.
Pda empty_pda(const std::vector<Letter>& alphabet);
Pda universal_pda(const std::vector<Letter>& alphabet);

/// Atom language backed by an automaton.
class PdaLanguage : public AtomLanguage {
public:
  explicit PdaLanguage(Pda p);
  std::vector<Letter> alphabet() const override;
  Membership member(const Word& w) const override;
  const Pda& pda() const { return pda_; }

private:
  Pda pda_;
  PdaDecider decider_;
};

/// Resolves `file:<path>` (automaton text) and `named:<name>:<sigma>`
/// (sigma in word syntax).
AtomPtr resolve_atom(const std::string& id);

/// Text form: header `pda`, then `alphabet`, `states`, `stack`, `initial
/// <state> <symbol>`, `final`, `buchi` lines and one `<from> <letter|λ>
/// <top> -> <to> <push...|ε>` line per transition, sorted.
std::string to_text(const Pda& p);
Pda parse_pda(std::string_view text);

} // namespace wadgeforge
