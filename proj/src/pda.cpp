#include "wadgeforge/pda.hpp"

#include "wadgeforge/error.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace wadgeforge {

namespace {

void insert_sorted(std::vector<Letter>& v, const Letter& l) {
  auto it = std::lower_bound(v.begin(), v.end(), l);
  if (it == v.end() || !(*it == l)) v.insert(it, l);
}

} // namespace

std::uint32_t Pda::add_state(std::string name, bool is_final, bool is_buchi) {
  states.push_back(std::move(name));
  final.push_back(is_final);
  buchi.push_back(is_buchi);
  return static_cast<std::uint32_t>(states.size() - 1);
}

std::uint32_t Pda::add_symbol(std::string name) {
  stack.push_back(std::move(name));
  return static_cast<std::uint32_t>(stack.size() - 1);
}

void Pda::add_letters(const std::vector<Letter>& letters) {
  for (const auto& l : letters) insert_sorted(alphabet, l);
}

void Pda::add(std::uint32_t from, std::optional<Letter> letter, std::uint32_t top, std::uint32_t to,
              std::vector<std::uint32_t> push) {
  if (letter) insert_sorted(alphabet, *letter);
  transitions.push_back({from, std::move(letter), top, to, std::move(push)});
}

bool Pda::has_final() const { return std::find(final.begin(), final.end(), true) != final.end(); }

bool Pda::has_buchi() const { return std::find(buchi.begin(), buchi.end(), true) != buchi.end(); }

void validate(const Pda& p) {
  const auto ns = p.states.size(), nk = p.stack.size();
  if (ns == 0 || nk == 0) throw AutomatonError("automaton needs a state and a stack symbol");
  if (p.final.size() != ns || p.buchi.size() != ns) throw AutomatonError("acceptance sets do not match the states");
  if (p.initial >= ns || p.bottom >= nk) throw AutomatonError("initial state or stack symbol undeclared");
  if (!p.has_final() && !p.has_buchi()) throw AutomatonError("both acceptance sets are empty");
  if (!std::is_sorted(p.alphabet.begin(), p.alphabet.end()))
    throw AutomatonError("alphabet must be sorted");
  // Silent moves that keep the top symbol form a graph on (state, top).
  std::vector<std::vector<std::size_t>> same(ns * nk);
  for (const auto& t : p.transitions) {
    if (t.from >= ns || t.to >= ns || t.top >= nk) throw AutomatonError("transition references an undeclared state or symbol");
    for (auto s : t.push)
      if (s >= nk) throw AutomatonError("transition pushes an undeclared symbol");
    if (t.letter && !std::binary_search(p.alphabet.begin(), p.alphabet.end(), *t.letter))
      throw AutomatonError("transition letter " + to_string(*t.letter) + " is not in the alphabet");
    if (!t.letter && t.push.size() == 1 && t.push[0] == t.top)
      same[t.from * nk + t.top].push_back(t.to * nk + t.top);
  }
  std::vector<std::uint8_t> color(ns * nk, 0);
  std::function<void(std::size_t)> dfs = [&](std::size_t v) {
    color[v] = 1;
    for (auto w : same[v]) {
      if (color[w] == 1) throw AutomatonError("silent cycle without stack change at state " + p.states[v / nk]);
      if (color[w] == 0) dfs(w);
    }
    color[v] = 2;
  };
  for (std::size_t v = 0; v < ns * nk; ++v)
    if (color[v] == 0 && !same[v].empty()) dfs(v);
}

std::uint32_t FiniteAutomaton::add_state(std::string name, bool is_final, bool is_buchi) {
  states.push_back(std::move(name));
  final.push_back(is_final);
  buchi.push_back(is_buchi);
  return static_cast<std::uint32_t>(states.size() - 1);
}

void FiniteAutomaton::add(std::uint32_t from, const Letter& letter, std::uint32_t to) {
  insert_sorted(alphabet, letter);
  edges.push_back({from, letter, to});
}

Pda to_pda(const FiniteAutomaton& a) {
  Pda p;
  p.states = a.states;
  p.final = a.final;
  p.buchi = a.buchi;
  p.initial = a.initial;
  p.bottom = p.add_symbol("Z");
  p.alphabet = a.alphabet;
  for (const auto& e : a.edges) p.add(e.from, e.letter, p.bottom, e.to, {p.bottom});
  return p;
}

Pda empty_pda(const std::vector<Letter>& alphabet) {
  Pda p;
  p.initial = p.add_state("q0");
  // Unreachable, so the acceptance condition is nonempty but never met.
  p.add_state("dead", true, true);
  p.bottom = p.add_symbol("Z");
  p.add_letters(alphabet);
  return p;
}

Pda universal_pda(const std::vector<Letter>& alphabet) {
  Pda p;
  p.initial = p.add_state("all", true, true);
  p.bottom = p.add_symbol("Z");
  p.add_letters(alphabet);
  for (const auto& l : alphabet) p.add(0, l, 0, 0, {0});
  return p;
}

// Text form.

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += ' ' + s;
  return out;
}

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

} // namespace

std::string to_text(const Pda& p) {
  std::ostringstream out;
  out << "pda\nalphabet";
  for (const auto& l : p.alphabet) out << ' ' << to_string(l);
  out << "\nstates" << join(p.states) << "\nstack" << join(p.stack) << "\ninitial " << p.states[p.initial]
      << ' ' << p.stack[p.bottom] << "\nfinal";
  for (std::size_t i = 0; i < p.states.size(); ++i)
    if (p.final[i]) out << ' ' << p.states[i];
  out << "\nbuchi";
  for (std::size_t i = 0; i < p.states.size(); ++i)
    if (p.buchi[i]) out << ' ' << p.states[i];
  out << '\n';
  std::vector<std::string> lines;
  for (const auto& t : p.transitions) {
    std::string line = p.states[t.from] + ' ' + (t.letter ? to_string(*t.letter) : std::string("λ")) + ' ' +
                       p.stack[t.top] + " -> " + p.states[t.to];
    if (t.push.empty()) line += " ε";
    for (auto s : t.push) line += ' ' + p.stack[s];
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  for (const auto& l : lines) out << l << '\n';
  return out.str();
}

Pda parse_pda(std::string_view text) {
  Pda p;
  std::map<std::string, std::uint32_t> state_ids, symbol_ids;
  auto state = [&](const std::string& n) {
    auto it = state_ids.find(n);
    if (it == state_ids.end()) throw ParseError("undeclared state '" + n + "'");
    return it->second;
  };
  auto symbol = [&](const std::string& n) {
    auto it = symbol_ids.find(n);
    if (it == symbol_ids.end()) throw ParseError("undeclared stack symbol '" + n + "'");
    return it->second;
  };
  bool header = false, has_initial = false;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto t = tokens(raw);
    if (t.empty()) continue;
    const std::string where = " on line " + std::to_string(lineno);
    if (!header) {
      if (t.size() != 1 || t[0] != "pda") throw ParseError("expected 'pda' header" + where);
      header = true;
      continue;
    }
    const std::string& key = t[0];
    if (key == "alphabet") {
      for (std::size_t i = 1; i < t.size(); ++i) p.add_letters({parse_letter(t[i])});
    } else if (key == "states") {
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (!state_ids.emplace(t[i], static_cast<std::uint32_t>(p.states.size())).second)
          throw ParseError("duplicate state '" + t[i] + "'" + where);
        p.add_state(t[i]);
      }
    } else if (key == "stack") {
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (!symbol_ids.emplace(t[i], static_cast<std::uint32_t>(p.stack.size())).second)
          throw ParseError("duplicate stack symbol '" + t[i] + "'" + where);
        p.add_symbol(t[i]);
      }
    } else if (key == "initial") {
      if (t.size() != 3) throw ParseError("expected 'initial <state> <symbol>'" + where);
      p.initial = state(t[1]);
      p.bottom = symbol(t[2]);
      has_initial = true;
    } else if (key == "final" || key == "buchi") {
      for (std::size_t i = 1; i < t.size(); ++i) (key == "final" ? p.final : p.buchi)[state(t[i])] = true;
    } else {
      if (t.size() < 6 || t[3] != "->") throw ParseError("malformed transition" + where);
      std::optional<Letter> letter;
      if (t[1] != "λ") letter = parse_letter(t[1]);
      std::vector<std::uint32_t> push;
      if (!(t.size() == 6 && t[5] == "ε"))
        for (std::size_t i = 5; i < t.size(); ++i) push.push_back(symbol(t[i]));
      p.add(state(t[0]), std::move(letter), symbol(t[2]), state(t[4]), std::move(push));
    }
  }
  if (!header) throw ParseError("empty automaton text");
  if (!has_initial) throw ParseError("missing 'initial' line");
  validate(p);
  return p;
}

} // namespace wadgeforge
