#pragma once

// Lassos in the shape (S* C S* B)* (S* C) a1 u1 B v1 a2 w2 C z2 ... over
// S = {0, 1}, built from their parts, with single-constraint violations
// repeated in every period so that no finite prefix can absorb them.

#include "wadgeforge/pda.hpp"

#include <random>
#include <string>
#include <vector>

namespace witness {

using wadgeforge::Letter;
using wadgeforge::LetterSeq;
using wadgeforge::Word;

enum class Kind { Valid, BadD1, BadD2, BadShape, OutsideL, StemOnly };

inline const char* name(Kind k) {
  switch (k) {
    case Kind::Valid: return "valid";
    case Kind::BadD1: return "|v| != |u|";
    case Kind::BadD2: return "|z| != |w|+1";
    case Kind::BadShape: return "separator order";
    case Kind::OutsideL: return "t outside L";
    case Kind::StemOnly: return "violation in the stem only";
  }
  return "?";
}

/// (0^n 1^n, n >= 1)^omega: a small non-regular omega-CFL.
inline wadgeforge::Pda balanced_blocks_pda() {
  wadgeforge::Pda p;
  const auto start = p.add_state("start", false, true);
  const auto zeros = p.add_state("zeros");
  const auto ones = p.add_state("ones");
  p.bottom = p.add_symbol("Z");
  const auto x = p.add_symbol("X");
  p.add_letters({Letter::plain("0"), Letter::plain("1")});
  p.add(start, Letter::plain("0"), p.bottom, zeros, {x, p.bottom});
  p.add(zeros, Letter::plain("0"), x, zeros, {x, x});
  p.add(zeros, Letter::plain("1"), x, ones, {});
  p.add(ones, Letter::plain("1"), x, ones, {});
  p.add(ones, std::nullopt, p.bottom, start, {p.bottom});
  return p;
}

struct Witness {
  Word word;
  Kind kind;
};

class Builder {
public:
  explicit Builder(unsigned seed) : rng_(seed) {}

  Witness make(Kind kind) {
    static const char* const in_stems[] = {"", "01", "0011"};
    static const char* const in_periods[] = {"01", "0011", "000111", "0101"};
    static const char* const out_periods[] = {"0110", "10", "0001", "1100"};
    const std::string t_stem = in_stems[pick(0, 2)];
    const std::string t_period = kind == Kind::OutsideL ? out_periods[pick(0, 3)] : in_periods[pick(0, 3)];
    LetterSeq stem;
    for (int k = pick(0, 2); k > 0; --k) {
      append(stem, sigma(0, 2));
      stem.push_back(sep("C"));
      append(stem, sigma(0, 2));
      stem.push_back(sep("B"));
    }
    append(stem, sigma(0, 2));
    stem.push_back(sep("C"));
    // t_stem has even length, so the period starts with a D1 block.
    const int bad_stem = kind == Kind::StemOnly ? pick(0, static_cast<int>(t_stem.size())) : -1;
    for (std::size_t i = 0; i < t_stem.size(); ++i)
      append(stem, block(t_stem[i], i % 2, static_cast<int>(i) == bad_stem ? pick(1, 2) : 0));
    const int target = pick(0, static_cast<int>(t_period.size()) / 2 - 1);
    LetterSeq period;
    for (std::size_t i = 0; i < t_period.size(); ++i) {
      const bool d1 = i % 2 == 0;
      const bool hit = static_cast<int>(i / 2) == target;
      int skew = 0;
      if (hit && ((kind == Kind::BadD1 && d1) || (kind == Kind::BadD2 && !d1))) skew = pick(1, 2);
      append(period, block(t_period[i], i % 2, skew));
    }
    if (kind == Kind::BadShape)
      for (auto& l : period)
        if (l.name == "B") {
          l = sep("C");
          break;
        }
    return {Word::up(stem, period), kind};
  }

private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  static Letter sep(const char* n) { return Letter::plain(n); }
  static void append(LetterSeq& to, const LetterSeq& s) { to.insert(to.end(), s.begin(), s.end()); }

  LetterSeq sigma(int lo, int hi) {
    LetterSeq s;
    for (int i = pick(lo, hi); i > 0; --i) s.push_back(Letter::plain(pick(0, 1) ? "1" : "0"));
    return s;
  }

  // a u B v (phase 0) or a w C z (phase 1); skew 1 shortens the right part
  // by one when possible, skew 2 lengthens it.
  LetterSeq block(char a, std::size_t phase, int skew) {
    LetterSeq out{Letter::plain(std::string(1, a))};
    const int left = pick(0, 2);
    int right = phase == 0 ? left : left + 1;
    if (skew == 1 && right > 0) --right;
    else if (skew != 0) ++right;
    append(out, sigma(left, left));
    out.push_back(sep(phase == 0 ? "B" : "C"));
    append(out, sigma(right, right));
    return out;
  }

  std::mt19937 rng_;
};

} // namespace witness
