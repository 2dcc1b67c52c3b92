#include "wadgeforge/error.hpp"
#include "wadgeforge/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace wadgeforge {

namespace {

std::size_t utf8_len(unsigned char c) {
  if (c < 0x80) return 1;
  if ((c >> 5) == 0x6) return 2;
  if ((c >> 4) == 0xE) return 3;
  if ((c >> 3) == 0x1E) return 4;
  throw ParseError("word: invalid UTF-8");
}

bool single_code_point(const std::string& s) {
  return !s.empty() && utf8_len(static_cast<unsigned char>(s[0])) == s.size();
}

const std::string kLambda = "λ";

class WordParser {
public:
  explicit WordParser(std::string_view t) : t_(t) {}

  void skip_ws() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= t_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < t_.size() ? t_[pos_] : '\0';
  }
  bool lambda() {
    skip_ws();
    if (t_.substr(pos_, kLambda.size()) == kLambda) {
      pos_ += kLambda.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("word: " + what + " at offset " + std::to_string(pos_));
  }

  Letter letter() {
    skip_ws();
    if (pos_ >= t_.size()) fail("expected a letter");
    char c = t_[pos_];
    if (c == '~') {
      ++pos_;
      unsigned j = 1;
      if (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) {
        auto [p, ec] = std::from_chars(t_.data() + pos_, t_.data() + t_.size(), j);
        if (ec != std::errc() || j == 0) fail("bad eraser index");
        pos_ = static_cast<std::size_t>(p - t_.data());
      }
      return Letter::erase(j);
    }
    if (c == '{') {
      auto close = t_.find('}', pos_);
      if (close == std::string_view::npos) fail("unterminated {name}");
      std::string name(t_.substr(pos_ + 1, close - pos_ - 1));
      if (name.empty()) fail("empty letter name");
      pos_ = close + 1;
      return Letter::plain(std::move(name));
    }
    if (c == '(' || c == ')' || c == '^' || c == '}') fail(std::string("unexpected '") + c + "'");
    std::size_t len = utf8_len(static_cast<unsigned char>(c));
    if (pos_ + len > t_.size()) fail("truncated UTF-8");
    std::string name(t_.substr(pos_, len));
    pos_ += len;
    return Letter::plain(std::move(name));
  }

  LetterSeq letters_until_paren() {
    LetterSeq out;
    while (!done() && peek() != '(' && peek() != ')') {
      if (lambda()) continue;
      out.push_back(letter());
    }
    return out;
  }

  Word word() {
    LetterSeq stem = letters_until_paren();
    if (done()) return Word::finite(std::move(stem));
    if (peek() != '(') fail("unexpected ')'");
    ++pos_;
    LetterSeq period = letters_until_paren();
    if (peek() != ')') fail("expected ')'");
    ++pos_;
    skip_ws();
    if (t_.substr(pos_, 2) != "^w") fail("expected ')^w'");
    pos_ += 2;
    if (!done()) fail("trailing input after periodic part");
    if (period.empty()) fail("empty period");
    return Word::up(std::move(stem), std::move(period));
  }

private:
  std::string_view t_;
  std::size_t pos_ = 0;
};

} // namespace

Word parse_word(std::string_view text) { return WordParser(text).word(); }

LetterSeq parse_letters(std::string_view text) {
  Word w = parse_word(text);
  if (!w.is_finite()) throw ParseError("word: expected a finite word");
  return w.stem();
}

Letter parse_letter(std::string_view text) {
  LetterSeq s = parse_letters(text);
  if (s.size() != 1) throw ParseError("word: expected a single letter");
  return s[0];
}

std::string to_string(const Letter& l) {
  if (l.is_eraser()) return l.eraser == 1 ? "~" : "~" + std::to_string(l.eraser);
  if (single_code_point(l.name) && l.name.find_first_of("(){}^~ ") == std::string::npos &&
      l.name != kLambda)
    return l.name;
  return "{" + l.name + "}";
}

std::string to_string(const LetterSeq& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::string t = to_string(s[i]);
    // ~ followed by a digit letter would read back as a larger index.
    if (i > 0 && s[i - 1].is_eraser() && std::isdigit(static_cast<unsigned char>(t[0]))) t = "{" + t + "}";
    out += t;
  }
  return out;
}

std::string to_string(const Word& w) {
  if (w.is_finite()) return w.stem().empty() ? kLambda : to_string(w.stem());
  return to_string(w.stem()) + "(" + to_string(w.period()) + ")^w";
}

GridPrefix::GridPrefix(unsigned depth) {
  rows_.resize(depth);
  for (unsigned m = 1; m <= depth; ++m) rows_[m - 1].resize(depth + 1 - m);
}

const Letter& GridPrefix::at(unsigned m, unsigned n) const {
  if (m < 1 || n < 1 || m + n > depth() + 1) throw PreconditionError("grid index out of range");
  return rows_[m - 1][n - 1];
}

void GridPrefix::set(unsigned m, unsigned n, Letter l) {
  if (m < 1 || n < 1 || m + n > depth() + 1) throw PreconditionError("grid index out of range");
  rows_[m - 1][n - 1] = std::move(l);
}

LetterSeq diag_u(const GridPrefix& g, unsigned p) {
  if (p < 1 || p > g.depth()) throw PreconditionError("diagonal index out of range");
  LetterSeq out;
  for (unsigned n = 1; n <= p; ++n) out.push_back(g.at(p + 1 - n, n));
  return out;
}

LetterSeq diag_v(const GridPrefix& g, unsigned p) {
  LetterSeq out = diag_u(g, p);
  std::reverse(out.begin(), out.end());
  return out;
}

LetterSeq h_prefix(const GridPrefix& g, const GridMarkers& m) {
  if (g.depth() < 1) throw PreconditionError("grid depth must be positive");
  LetterSeq out;
  for (unsigned p = 1; p <= g.depth(); ++p) {
    LetterSeq block = p % 2 == 1 ? diag_v(g, p) : diag_u(g, p);
    out.insert(out.end(), block.begin(), block.end());
    out.push_back(Letter::plain(p % 2 == 1 ? m.C : m.B));
  }
  return out;
}

GridDecodeResult h_decode(const LetterSeq& w, const GridMarkers& m) {
  auto is_sep = [&](const Letter& l) { return !l.is_eraser() && (l.name == m.C || l.name == m.B); };
  std::vector<LetterSeq> blocks;
  LetterSeq cur;
  for (const auto& l : w) {
    if (!is_sep(l)) {
      cur.push_back(l);
      continue;
    }
    const unsigned k = static_cast<unsigned>(blocks.size()) + 1;
    const std::string& want = k % 2 == 1 ? m.C : m.B;
    if (l.name != want)
      return {std::nullopt, "separator " + l.name + " after block " + std::to_string(k)};
    if (cur.size() != k)
      return {std::nullopt, "block " + std::to_string(k) + " has length " +
                                std::to_string(cur.size()) + ", expected " + std::to_string(k)};
    blocks.push_back(std::move(cur));
    cur.clear();
  }
  if (!cur.empty()) return {std::nullopt, "incomplete final block"};
  if (blocks.empty()) return {std::nullopt, "no complete block"};
  GridPrefix g(static_cast<unsigned>(blocks.size()));
  for (unsigned p = 1; p <= blocks.size(); ++p) {
    LetterSeq u = blocks[p - 1];
    if (p % 2 == 1) std::reverse(u.begin(), u.end());
    for (unsigned n = 1; n <= p; ++n) g.set(p + 1 - n, n, u[n - 1]);
  }
  return {std::move(g), ""};
}

GridPrefix parse_grid(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  unsigned depth = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw != "depth" || !(ls >> depth) || depth == 0) throw ParseError("grid: expected 'depth p'");
    break;
  }
  if (depth == 0) throw ParseError("grid: missing depth line");
  GridPrefix g(depth);
  unsigned m = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (++m > depth) throw ParseError("grid: too many rows");
    if (toks.size() != depth + 1 - m)
      throw ParseError("grid: row " + std::to_string(m) + " needs " + std::to_string(depth + 1 - m) +
                       " cells");
    for (unsigned n = 1; n <= toks.size(); ++n) g.set(m, n, parse_letter(toks[n - 1]));
  }
  if (m != depth) throw ParseError("grid: expected " + std::to_string(depth) + " rows");
  return g;
}

std::string to_string(const GridPrefix& g) {
  std::string out = "depth " + std::to_string(g.depth()) + "\n";
  for (unsigned m = 1; m <= g.depth(); ++m) {
    for (unsigned n = 1; m + n <= g.depth() + 1; ++n) {
      if (n > 1) out += ' ';
      out += to_string(g.at(m, n));
    }
    out += '\n';
  }
  return out;
}

} // namespace wadgeforge
