#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wadgeforge {

/// A letter is a name plus an eraser index; index 0 means a plain letter.
/// Markers are plain letters with reserved names.
struct Letter {
  std::string name;
  unsigned eraser = 0;

  static Letter plain(std::string n) { return Letter{std::move(n), 0}; }
  static Letter erase(unsigned j) { return Letter{"", j}; }
  bool is_eraser() const { return eraser != 0; }

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using LetterSeq = std::vector<Letter>;

/// A finite word or an ultimately periodic omega-word stem.period^omega.
/// UP words are canonical: the period is primitive and the stem does not end
/// with the period's last letter, so equal omega-words compare equal.
class Word {
public:
  enum class Kind : std::uint8_t { Finite, UP };

  Word() = default;
  static Word finite(LetterSeq letters);
  /// Throws PreconditionError on an empty period.
  static Word up(LetterSeq stem, LetterSeq period);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_empty() const { return is_finite() && stem_.empty(); }
  const LetterSeq& stem() const { return stem_; }
  const LetterSeq& period() const { return period_; }

  /// Letter at 0-based position i; finite words require i < size.
  const Letter& at(std::size_t i) const;
  /// First n letters (fewer for short finite words).
  LetterSeq prefix(std::size_t n) const;
  /// Every distinct letter occurring in the word.
  std::vector<Letter> letters() const;

  friend bool operator==(const Word&, const Word&) = default;

private:
  Kind kind_ = Kind::Finite;
  LetterSeq stem_;
  LetterSeq period_;
};

/// Prepends a finite sequence (keeps canonical form).
Word concat(const LetterSeq& left, const Word& w);

enum class EraseMode : std::uint8_t {
  /// Back-space on an empty word is a no-op.
  Tilde,
  /// Back-space on an empty word makes the result undefined.
  Approx,
};

struct EvalOptions {
  /// Bound on simulated letters; exceeding it reports NoStabilization.
  std::uint64_t max_steps = 1000000;
};

struct EvalResult {
  enum class Status : std::uint8_t { Ok, Undefined, NoStabilization };
  Status status = Status::Ok;
  Word word;

  bool ok() const { return status == Status::Ok; }
};

/// Evaluates the eraser with index `eraser` (other letters, including other
/// erasers, are plain). UP words evaluate to the exact limit word.
EvalResult eraser_eval(const Word& w, EraseMode mode, unsigned eraser = 1,
                       const EvalOptions& opts = {});

/// Evaluates erasers hi, hi-1, ..., lo in that order.
EvalResult staged_eval(const Word& w, EraseMode mode, unsigned hi, unsigned lo = 1,
                       const EvalOptions& opts = {});

/// Names of the letters used by the eraser coding and the bullet shape.
struct Markers {
  std::string a = "a", b = "b";
  std::string alpha = "α", beta = "β";
  std::string B = "B", C = "C", D = "D", E = "E";

  /// Markers of nesting level `level`; level 1 uses the bare names, higher
  /// levels append the level number (a2, B2, ...).
  static Markers level(unsigned level);
  std::vector<std::string> all() const { return {a, b, alpha, beta, B, C, D, E}; }
};

/// Replaces every eraser j > offset by alpha B^k C^k D^k E^k beta with
/// k = j - offset; lower erasers and plain letters are kept.
Word encode_erasers(const Word& w, const Markers& m = {}, unsigned offset = 0);

enum class Malformed : std::uint8_t { Shape, JneK, KneL, LneM, IndexTooLarge, Unterminated };

std::string to_string(Malformed m);

struct DecodeResult {
  std::optional<Word> word;
  Malformed reason = Malformed::Shape;
  std::string detail;

  bool ok() const { return word.has_value(); }
};

/// Inverse of encode_erasers for codes of erasers offset+1 .. offset+n.
DecodeResult decode_erasers(const Word& w, unsigned n, const Markers& m = {}, unsigned offset = 0);

/// Whole-word check of the eraser coding. `well_shaped` holds when every
/// segment is alpha B+ C+ D+ E+ beta and none is left open; `junk` is the
/// first segment that is well shaped but codes no eraser offset+1..offset+n.
struct CodeScan {
  bool well_shaped = true;
  std::optional<Malformed> junk;
};

CodeScan scan_codes(const Word& w, unsigned n, const Markers& m = {}, unsigned offset = 0);

/// Deletes every occurrence of d; an omega-word whose tail is d^omega
/// becomes finite.
Word remove_letter(const Word& w, const Letter& d);

/// Finite prefix of an omega^2-word (an omega x omega grid of letters):
/// cells x(m, n) with m + n <= depth + 1.
class GridPrefix {
public:
  GridPrefix() = default;
  explicit GridPrefix(unsigned depth);

  unsigned depth() const { return static_cast<unsigned>(rows_.size()); }
  /// 1-based indices.
  const Letter& at(unsigned m, unsigned n) const;
  void set(unsigned m, unsigned n, Letter l);

  friend bool operator==(const GridPrefix&, const GridPrefix&) = default;

private:
  std::vector<LetterSeq> rows_;
};

/// x(p,1) x(p-1,2) ... x(1,p).
LetterSeq diag_u(const GridPrefix& g, unsigned p);
/// Reverse of diag_u.
LetterSeq diag_v(const GridPrefix& g, unsigned p);

struct GridMarkers {
  std::string C = "C", B = "B";
};

/// Diagonals 1..depth of the omega^2 coding: odd blocks are written
/// reversed and followed by C, even blocks forward and followed by B.
LetterSeq h_prefix(const GridPrefix& g, const GridMarkers& m = {});

struct GridDecodeResult {
  std::optional<GridPrefix> grid;
  std::string reason;
};

GridDecodeResult h_decode(const LetterSeq& w, const GridMarkers& m = {});

/// Text forms. Letters are single code points, `{name}` for longer names,
/// `~j` for erasers (`~` alone is `~1`), `λ` for the empty word and
/// `u(v)^w` for ultimately periodic words. Whitespace is ignored.
Word parse_word(std::string_view text);
LetterSeq parse_letters(std::string_view text);
Letter parse_letter(std::string_view text);
std::string to_string(const Letter& l);
std::string to_string(const LetterSeq& s);
std::string to_string(const Word& w);

/// Grid text: a `depth p` line, then line m lists x(m,1) x(m,2) ...
GridPrefix parse_grid(std::string_view text);
std::string to_string(const GridPrefix& g);

} // namespace wadgeforge
