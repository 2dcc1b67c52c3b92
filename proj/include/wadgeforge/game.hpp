#pragma once

#include "wadgeforge/concil.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace wadgeforge {

/// One action of a player. A tail declaration ends the player's part of
/// the play: the word becomes (letters so far).period^omega.
struct Move {
  enum class Kind : std::uint8_t { Letter, Skip, DeclareTail };
  Kind kind = Kind::Skip;
  Letter letter;
  LetterSeq period;

  static Move write(Letter l);
  static Move skip();
  /// Throws PreconditionError on an empty period.
  static Move declare_tail(LetterSeq period);

  friend bool operator==(const Move&, const Move&) = default;
};

/// What a strategy sees before its move in round `round` (1-based).
struct GameView {
  int player = 1;
  std::size_t round = 1;
  const std::vector<Letter>* alphabet = nullptr;
  /// Moves already made; for player 2 the opponent's list includes the
  /// opponent's move of the current round.
  const std::vector<Move>* own = nullptr;
  const std::vector<Move>* opponent = nullptr;
};

/// Must be a deterministic function of the view.
using Strategy = std::function<Move(const GameView&)>;

/// copy: echoes the opponent's last move (skips when the opponent skipped
/// or has stopped). embed_copy: copy with letters outside `sub` skipped and
/// removed from declared periods; an empty `sub` means the own alphabet.
/// skip_forever: always skips. Throws PreconditionError on another name.
Strategy builtin_strategy(std::string_view name, std::vector<Letter> sub = {});

/// Plays a recorded list of moves, then skips.
Strategy scripted_strategy(std::vector<Move> moves);

/// Seeded adversary: letters with probability 1 - skip_per_mille/1000,
/// skips otherwise, and a declared tail of up to 3 letters in round
/// `declare_round` (0: never). The move depends on the round only.
Strategy random_strategy(std::uint64_t seed, unsigned skip_per_mille = 200, std::size_t declare_round = 0);

std::vector<std::string> builtin_strategy_names();

enum class Outcome : std::uint8_t { P1Wins, P2Wins, Undecided };

std::string to_string(Outcome o);

struct TranscriptEntry {
  std::size_t round = 0;
  int player = 1;
  Move move;

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

struct PlayResult {
  Outcome outcome = Outcome::Undecided;
  Word x, y;
  Membership x_in_a = Membership::Unsupported;
  Membership y_in_b = Membership::Unsupported;
  /// Set when player 1 skipped the first move under the strict rule.
  bool forfeit = false;
  std::vector<TranscriptEntry> transcript;
};

struct GameOptions {
  /// Player 1 may skip the first move; when false, an opening skip loses.
  bool allow_first_skip = true;
  EvalOptions eval;
};

/// Bounded conciliating game C(A, B): player 1 writes over A's alphabet,
/// player 2 over B's, player 1 first. Player 2 wins iff x in A <-> y in B.
/// Throws PreconditionError when rounds is 0 and AlphabetError when a
/// strategy writes a letter outside its alphabet.
PlayResult play(const ExprPtr& a, const ExprPtr& b, const Strategy& s1, const Strategy& s2, std::size_t rounds,
                const GameOptions& opts = {});

/// Text form, one `round=<n> player=<1|2> move=<letter|skip|tail> [value=<letters>]`
/// line per entry.
std::string to_text(const std::vector<TranscriptEntry>& transcript);
std::vector<TranscriptEntry> parse_transcript(std::string_view text);
/// The moves of one player in a transcript.
std::vector<Move> moves_of(const std::vector<TranscriptEntry>& transcript, int player);

} // namespace wadgeforge
