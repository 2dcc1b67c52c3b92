#include "wadgeforge/pda.hpp"

#include "wadgeforge/error.hpp"

#include <algorithm>
#include <deque>

namespace wadgeforge {

// The word is folded into the control state: (state, position) for a
// finite word (positions 0..n) or a lasso (positions 0..|u|+|v|-1 with the
// last one looping back to |u|). Acceptance then reduces to questions about
// heads <control, top symbol> of a pushdown system:
//  - pops[h]: the controls reachable when the top symbol of h is first
//    popped, with the flags met on the way (accepting state left, letter
//    read);
//  - edges h -> g: g is a head reached from h without popping below it.
// A finite word is accepted iff some reachable head (or the emptied stack)
// has a final state at the end position. A lasso is accepted iff a
// reachable strongly connected component of the head graph has internal
// edges carrying both flags.

namespace {

constexpr std::uint8_t kAcc = 1;
constexpr std::uint8_t kRead = 2;

struct Rule {
  int letter; // -1 for silent
  std::uint32_t to;
  const std::vector<std::uint32_t>* push;
};

} // namespace

struct PdaDecider::Impl {
  Pda pda;
  std::size_t nstates = 0, nsym = 0;
  std::vector<std::vector<Rule>> rules; // by state * nsym + top

  explicit Impl(const Pda& p) : pda(p) {
    validate(pda);
    nstates = pda.states.size();
    nsym = pda.stack.size();
    rules.resize(nstates * nsym);
    for (const auto& t : pda.transitions) {
      int letter = -1;
      if (t.letter) letter = letter_id(*t.letter);
      rules[t.from * nsym + t.top].push_back({letter, t.to, &t.push});
    }
  }

  int letter_id(const Letter& l) const {
    auto it = std::lower_bound(pda.alphabet.begin(), pda.alphabet.end(), l);
    if (it == pda.alphabet.end() || !(*it == l)) return -1;
    return static_cast<int>(it - pda.alphabet.begin());
  }

  std::vector<int> encode(const LetterSeq& s) const {
    std::vector<int> out;
    out.reserve(s.size());
    for (const auto& l : s) {
      int id = letter_id(l);
      if (id < 0) throw AlphabetError("letter " + to_string(l) + " is not in the automaton's alphabet");
      out.push_back(id);
    }
    return out;
  }
};

namespace {

struct Cont {
  std::uint32_t origin;
  const std::vector<std::uint32_t>* push;
  std::uint32_t j;
  std::uint8_t flags;
};

class Search {
public:
  Search(const PdaDecider::Impl& m, std::vector<int> word, bool lasso, std::size_t loop_start)
      : m_(m), word_(std::move(word)), lasso_(lasso), loop_start_(loop_start) {
    npos_ = lasso_ ? word_.size() : word_.size() + 1;
    slot_.assign(m_.nstates * npos_ * m_.nsym, kNone);
  }

  bool finite_accepts() {
    const std::uint32_t init = ensure(head(ctrl(m_.pda.initial, 0), m_.pda.bottom));
    while (!found_ && run_step()) {
    }
    if (found_) return true;
    for (const auto& [c, f] : heads_[init].pops)
      if (final_at_end(c)) return true;
    return false;
  }

  bool lasso_accepts() {
    ensure(head(ctrl(m_.pda.initial, 0), m_.pda.bottom));
    while (run_step()) {
    }
    return accepting_component();
  }

private:
  static constexpr std::uint32_t kNone = UINT32_MAX;

  // Per touched head, addressed by a compact id.
  struct HeadData {
    std::uint32_t head;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> pops;
    std::vector<Cont> waiters;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> edges;
  };

  std::uint32_t ctrl(std::size_t q, std::size_t pos) const { return static_cast<std::uint32_t>(q * npos_ + pos); }
  std::uint32_t head(std::uint32_t c, std::uint32_t sym) const {
    return static_cast<std::uint32_t>(c * m_.nsym + sym);
  }
  std::uint32_t ctrl_of(std::uint32_t h) const { return static_cast<std::uint32_t>(h / m_.nsym); }

  bool final_at_end(std::uint32_t c) const {
    return !lasso_ && c % npos_ == word_.size() && m_.pda.final[c / npos_];
  }

  std::uint32_t ensure(std::uint32_t h) {
    if (slot_[h] != kNone) return slot_[h];
    const auto id = static_cast<std::uint32_t>(heads_.size());
    slot_[h] = id;
    heads_.push_back({h, {}, {}, {}});
    if (final_at_end(ctrl_of(h))) found_ = true;
    return id;
  }

  bool run_step() {
    if (!events_.empty()) {
      auto [id, c, f] = events_.front();
      events_.pop_front();
      for (std::size_t i = 0; i < heads_[id].waiters.size(); ++i) resume(heads_[id].waiters[i], c, f);
      return true;
    }
    if (next_head_ < heads_.size()) {
      process(static_cast<std::uint32_t>(next_head_++));
      return true;
    }
    return false;
  }

  void process(std::uint32_t id) {
    const std::uint32_t h = heads_[id].head;
    const std::uint32_t c = ctrl_of(h);
    const std::uint32_t top = h % m_.nsym;
    const std::size_t q = c / npos_, pos = c % npos_;
    const std::uint8_t acc = m_.pda.buchi[q] ? kAcc : 0;
    for (const Rule& r : m_.rules[q * m_.nsym + top]) {
      std::uint32_t to;
      std::uint8_t flags = acc;
      if (r.letter < 0) {
        to = ctrl(r.to, pos);
      } else {
        if (!lasso_ && pos == word_.size()) continue;
        if (word_[pos] != r.letter) continue;
        std::size_t next = pos + 1;
        if (lasso_ && next == word_.size()) next = loop_start_;
        to = ctrl(r.to, next);
        flags |= kRead;
      }
      if (r.push->empty()) {
        add_pop(id, to, flags);
      } else {
        const std::uint32_t g = ensure(head(to, (*r.push)[0]));
        add_edge(id, g, flags);
        wait({id, r.push, 0, flags}, g);
      }
    }
  }

  void wait(const Cont& k, std::uint32_t g) {
    heads_[g].waiters.push_back(k);
    for (std::size_t i = 0; i < heads_[g].pops.size(); ++i) {
      auto [c, f] = heads_[g].pops[i];
      resume(k, c, f);
    }
  }

  // By value: ensure() may reallocate the waiter list k came from.
  void resume(Cont k, std::uint32_t c, std::uint8_t f) {
    const std::uint32_t j = k.j + 1;
    const std::uint8_t flags = k.flags | f;
    if (j == k.push->size()) {
      add_pop(k.origin, c, flags);
      return;
    }
    const std::uint32_t g = ensure(head(c, (*k.push)[j]));
    add_edge(k.origin, g, flags);
    wait({k.origin, k.push, j, flags}, g);
  }

  void add_pop(std::uint32_t id, std::uint32_t c, std::uint8_t f) {
    if (id == 0 && final_at_end(c)) found_ = true;
    for (auto& [c0, f0] : heads_[id].pops) {
      if (c0 != c) continue;
      if ((f0 | f) == f0) return;
      f0 |= f;
      events_.push_back({id, c, f0});
      return;
    }
    heads_[id].pops.push_back({c, f});
    events_.push_back({id, c, f});
  }

  void add_edge(std::uint32_t from, std::uint32_t to, std::uint8_t f) {
    if (!lasso_) return;
    for (auto& [t0, f0] : heads_[from].edges)
      if (t0 == to) {
        f0 |= f;
        return;
      }
    heads_[from].edges.push_back({to, f});
  }

  // Iterative Tarjan over the head graph.
  bool accepting_component() {
    const std::size_t n = heads_.size();
    std::vector<std::uint32_t> index(n, kNone), low(n, 0), comp(n, kNone);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::uint32_t counter = 0, ncomp = 0;
    struct Frame {
      std::uint32_t v;
      std::size_t next;
    };
    for (std::uint32_t root = 0; root < n; ++root) {
      if (index[root] != kNone) continue;
      std::vector<Frame> frames{{root, 0}};
      index[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!frames.empty()) {
        Frame& fr = frames.back();
        const auto& out = heads_[fr.v].edges;
        if (fr.next < out.size()) {
          const std::uint32_t w = out[fr.next++].first;
          if (index[w] == kNone) {
            index[w] = low[w] = counter++;
            stack.push_back(w);
            on_stack[w] = true;
            frames.push_back({w, 0});
          } else if (on_stack[w]) {
            low[fr.v] = std::min(low[fr.v], index[w]);
          }
          continue;
        }
        const std::uint32_t v = fr.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == index[v]) {
          std::uint32_t w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = ncomp;
          } while (w != v);
          ++ncomp;
        }
      }
    }
    std::vector<std::uint8_t> flags(ncomp, 0);
    for (std::uint32_t v = 0; v < n; ++v)
      for (const auto& [w, f] : heads_[v].edges)
        if (comp[v] == comp[w]) flags[comp[v]] |= f;
    return std::any_of(flags.begin(), flags.end(), [](std::uint8_t f) { return f == (kAcc | kRead); });
  }

  struct Event {
    std::uint32_t id, c;
    std::uint8_t f;
  };

  const PdaDecider::Impl& m_;
  std::vector<int> word_;
  bool lasso_;
  std::size_t loop_start_;
  std::size_t npos_ = 0;
  std::vector<std::uint32_t> slot_;
  std::vector<HeadData> heads_;
  std::size_t next_head_ = 0;
  std::deque<Event> events_;
  bool found_ = false;
};

} // namespace

PdaDecider::PdaDecider(const Pda& p) : impl_(std::make_unique<Impl>(p)) {}
PdaDecider::~PdaDecider() = default;
PdaDecider::PdaDecider(PdaDecider&&) noexcept = default;
PdaDecider& PdaDecider::operator=(PdaDecider&&) noexcept = default;

const std::vector<Letter>& PdaDecider::alphabet() const { return impl_->pda.alphabet; }

bool PdaDecider::accepts(const Word& w) const {
  if (w.is_finite()) {
    if (!impl_->pda.has_final()) {
      impl_->encode(w.stem());
      return false;
    }
    return Search(*impl_, impl_->encode(w.stem()), false, 0).finite_accepts();
  }
  std::vector<int> letters = impl_->encode(w.stem());
  const auto period = impl_->encode(w.period());
  letters.insert(letters.end(), period.begin(), period.end());
  if (!impl_->pda.has_buchi()) return false;
  return Search(*impl_, std::move(letters), true, w.stem().size()).lasso_accepts();
}

bool accepts_finite(const Pda& p, const Word& w) {
  if (!w.is_finite()) throw PreconditionError("accepts_finite needs a finite word");
  return PdaDecider(p).accepts(w);
}

bool accepts_up(const Pda& p, const Word& w) {
  if (w.is_finite()) throw PreconditionError("accepts_up needs an ultimately periodic word");
  if (!p.has_buchi()) throw AutomatonError("automaton has no Buchi states");
  return PdaDecider(p).accepts(w);
}

bool accepts(const Pda& p, const Word& w) { return PdaDecider(p).accepts(w); }

} // namespace wadgeforge
