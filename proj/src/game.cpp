#include "wadgeforge/game.hpp"

#include "wadgeforge/error.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace wadgeforge {

Move Move::write(Letter l) { return Move{Kind::Letter, std::move(l), {}}; }

Move Move::skip() { return Move{}; }

Move Move::declare_tail(LetterSeq period) {
  if (period.empty()) throw PreconditionError("a declared tail needs a nonempty period");
  return Move{Kind::DeclareTail, {}, std::move(period)};
}

namespace {

bool contains(const std::vector<Letter>& sorted, const Letter& l) {
  return std::binary_search(sorted.begin(), sorted.end(), l);
}

// The opponent's move this strategy answers: the same round for player 2,
// the previous round for player 1.
const Move* answered(const GameView& v) {
  const std::size_t lag = v.player == 1 ? 1 : 0;
  if (v.own->size() < lag) return nullptr;
  const std::size_t k = v.own->size() - lag;
  return k < v.opponent->size() ? &(*v.opponent)[k] : nullptr;
}

Move copy_move(const GameView& v, const std::vector<Letter>* sub) {
  const Move* m = answered(v);
  if (!m) return Move::skip();
  const std::vector<Letter>& keep = sub ? *sub : *v.alphabet;
  switch (m->kind) {
    case Move::Kind::Skip: return Move::skip();
    case Move::Kind::Letter: return !sub || contains(keep, m->letter) ? *m : Move::skip();
    case Move::Kind::DeclareTail: {
      if (!sub) return *m;
      LetterSeq period;
      for (const auto& l : m->period)
        if (contains(keep, l)) period.push_back(l);
      return period.empty() ? Move::skip() : Move::declare_tail(std::move(period));
    }
  }
  return Move::skip();
}

} // namespace

Strategy builtin_strategy(std::string_view name, std::vector<Letter> sub) {
  if (name == "copy") return [](const GameView& v) { return copy_move(v, nullptr); };
  if (name == "skip_forever") return [](const GameView&) { return Move::skip(); };
  if (name == "embed_copy") {
    std::sort(sub.begin(), sub.end());
    return [sub = std::move(sub)](const GameView& v) { return copy_move(v, sub.empty() ? v.alphabet : &sub); };
  }
  throw PreconditionError("unknown strategy " + std::string(name));
}

std::vector<std::string> builtin_strategy_names() { return {"copy", "embed_copy", "skip_forever"}; }

Strategy scripted_strategy(std::vector<Move> moves) {
  return [moves = std::move(moves)](const GameView& v) {
    return v.own->size() < moves.size() ? moves[v.own->size()] : Move::skip();
  };
}

Strategy random_strategy(std::uint64_t seed, unsigned skip_per_mille, std::size_t declare_round) {
  return [=](const GameView& v) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + v.round);
    const auto& letters = *v.alphabet;
    auto letter = [&] { return letters[rng() % letters.size()]; };
    if (letters.empty()) return Move::skip();
    if (v.round == declare_round) {
      LetterSeq period(1 + rng() % 3);
      for (auto& l : period) l = letter();
      return Move::declare_tail(std::move(period));
    }
    if (rng() % 1000 < skip_per_mille) return Move::skip();
    return Move::write(letter());
  };
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::P1Wins: return "P1_WINS";
    case Outcome::P2Wins: return "P2_WINS";
    case Outcome::Undecided: return "UNDECIDED";
  }
  return "?";
}

PlayResult play(const ExprPtr& a, const ExprPtr& b, const Strategy& s1, const Strategy& s2, std::size_t rounds,
                const GameOptions& opts) {
  if (rounds == 0) throw PreconditionError("a play needs at least one round");
  if (!a || !b) throw PreconditionError("null expression");
  const std::vector<Letter>* alphabet[2] = {&a->alphabet, &b->alphabet};
  const Strategy* strategy[2] = {&s1, &s2};
  std::vector<Move> moves[2];
  LetterSeq letters[2];
  LetterSeq tail[2];
  bool stopped[2] = {false, false};
  PlayResult r;
  for (std::size_t round = 1; round <= rounds; ++round) {
    for (int p = 0; p < 2; ++p) {
      if (stopped[p]) continue;
      const GameView view{p + 1, round, alphabet[p], &moves[p], &moves[1 - p]};
      Move m = (*strategy[p])(view);
      auto check = [&](const Letter& l) {
        if (!contains(*alphabet[p], l))
          throw AlphabetError("player " + std::to_string(p + 1) + " wrote " + to_string(l) +
                              ", which is not in its alphabet");
      };
      if (m.kind == Move::Kind::Letter) check(m.letter);
      if (m.kind == Move::Kind::DeclareTail) {
        if (m.period.empty()) throw PreconditionError("a declared tail needs a nonempty period");
        for (const auto& l : m.period) check(l);
      }
      r.transcript.push_back({round, p + 1, m});
      if (p == 0 && round == 1 && m.kind == Move::Kind::Skip && !opts.allow_first_skip) {
        r.forfeit = true;
        r.outcome = Outcome::P2Wins;
        return r;
      }
      if (m.kind == Move::Kind::Letter) letters[p].push_back(m.letter);
      if (m.kind == Move::Kind::DeclareTail) {
        tail[p] = m.period;
        stopped[p] = true;
      }
      moves[p].push_back(std::move(m));
    }
  }
  auto word = [&](int p) { return tail[p].empty() ? Word::finite(letters[p]) : Word::up(letters[p], tail[p]); };
  r.x = word(0);
  r.y = word(1);
  r.x_in_a = member(a, r.x, opts.eval);
  r.y_in_b = member(b, r.y, opts.eval);
  if (r.x_in_a == Membership::Unsupported || r.y_in_b == Membership::Unsupported)
    r.outcome = Outcome::Undecided;
  else
    r.outcome = (r.x_in_a == r.y_in_b) ? Outcome::P2Wins : Outcome::P1Wins;
  return r;
}

std::string to_text(const std::vector<TranscriptEntry>& transcript) {
  std::ostringstream out;
  for (const auto& e : transcript) {
    out << "round=" << e.round << " player=" << e.player << " move=";
    switch (e.move.kind) {
      case Move::Kind::Letter: out << "letter value=" << to_string(LetterSeq{e.move.letter}); break;
      case Move::Kind::Skip: out << "skip"; break;
      case Move::Kind::DeclareTail: out << "tail value=" << to_string(e.move.period); break;
    }
    out << '\n';
  }
  return out.str();
}

std::vector<TranscriptEntry> parse_transcript(std::string_view text) {
  std::vector<TranscriptEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fail = [&](const std::string& why) {
      return ParseError("transcript line " + std::to_string(lineno) + ": " + why);
    };
    // The value runs to the end of the line.
    std::string value;
    bool has_value = false;
    if (auto at = line.find(" value="); at != std::string::npos) {
      value = line.substr(at + 7);
      line.resize(at);
      has_value = true;
    }
    std::istringstream fields(line);
    std::string token, round, player, move;
    while (fields >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) throw fail("expected key=value, got " + token);
      const std::string key = token.substr(0, eq), val = token.substr(eq + 1);
      if (key == "round") round = val;
      else if (key == "player") player = val;
      else if (key == "move") move = val;
      else throw fail("unknown key " + key);
    }
    TranscriptEntry e;
    try {
      e.round = std::stoul(round);
    } catch (const std::exception&) {
      throw fail("bad round '" + round + "'");
    }
    if (player != "1" && player != "2") throw fail("player must be 1 or 2");
    e.player = player == "1" ? 1 : 2;
    if (move == "skip" && !has_value) {
      e.move = Move::skip();
    } else if (move == "letter" && has_value) {
      e.move = Move::write(parse_letter(value));
    } else if (move == "tail" && has_value) {
      e.move = Move::declare_tail(parse_letters(value));
    } else {
      throw fail("bad move '" + move + "'");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Move> moves_of(const std::vector<TranscriptEntry>& transcript, int player) {
  std::vector<Move> out;
  for (const auto& e : transcript)
    if (e.player == player) out.push_back(e.move);
  return out;
}

} // namespace wadgeforge
