#include "wadgeforge/error.hpp"
#include "wadgeforge/ordinal.hpp"

#include <cctype>
#include <charconv>

namespace wadgeforge {

namespace {

std::string subscript(std::uint64_t n) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string s = std::to_string(n);
  std::string out;
  for (char c : s) out += digits[c - '0'];
  return out;
}

struct Style {
  bool pretty;
  Base base;
  std::string omega() const {
    if (!pretty) return "w";
    return base == Base::Omega ? "ω" : "ω₁";
  }
  std::string eps(std::uint32_t i) const {
    if (!pretty) return "e" + std::to_string(i);
    return std::string(base == Base::Omega ? "ε" : "¹ε") + subscript(i);
  }
  std::string times() const { return pretty ? "·" : "*"; }
};

std::string render(const Ordinal& a, const Style& st);

std::string render_exponent(const Ordinal& e, const Style& st) {
  if (e.is_finite()) return std::to_string(e.finite_value());
  if (e.is_epsilon()) return st.eps(e.terms()[0].head.eps_index);
  if (e == Ordinal::omega(e.base())) return st.omega();
  return "(" + render(e, st) + ")";
}

std::string render_term(const Term& t, const Style& st) {
  if (!t.head.is_eps && t.head.exponent->is_zero()) return std::to_string(t.coeff);
  std::string s;
  if (t.head.is_eps) {
    s = st.eps(t.head.eps_index);
  } else {
    const Ordinal& e = *t.head.exponent;
    s = st.omega();
    if (!(e == Ordinal::finite(1, e.base()))) s += "^" + render_exponent(e, st);
  }
  if (t.coeff > 1) s += st.times() + std::to_string(t.coeff);
  return s;
}

std::string render(const Ordinal& a, const Style& st) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& t : a.terms()) {
    if (!out.empty()) out += " + ";
    out += render_term(t, st);
  }
  return out;
}

class Parser {
public:
  Parser(std::string_view text, Base base, OrdinalSyntax syntax)
      : text_(text), base_(base), normal_(syntax == OrdinalSyntax::Normal) {}

  Ordinal run() {
    Ordinal v = sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("ordinal: " + what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::uint64_t number() {
    skip_ws();
    std::uint64_t v = 0;
    auto* first = text_.data() + pos_;
    auto* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc::result_out_of_range) fail("number out of range");
    if (ec != std::errc() || ptr == first) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  // One summand together with whether it is a single normal-form term.
  struct Piece {
    Ordinal value;
    bool single_term;
  };

  Ordinal sum() {
    Piece first = product();
    Ordinal acc = first.value;
    bool first_piece = true;
    while (accept('+')) {
      Piece next = product();
      if (normal_) {
        if (first_piece && (!first.single_term || first.value.is_zero())) fail("not in normal form");
        if (!next.single_term || next.value.is_zero()) fail("not in normal form");
        const Head& prev = acc.terms().back().head;
        if (compare_heads(prev, next.value.terms()[0].head) != std::strong_ordering::greater)
          fail("terms are not in strictly decreasing order");
      }
      first_piece = false;
      acc = acc + next.value;
    }
    return acc;
  }

  Piece product() {
    Piece p = power();
    while (accept('*')) {
      std::uint64_t m = number();
      if (m == 0) {
        if (normal_) fail("zero coefficient");
        p = {Ordinal::zero(base_), true};
        continue;
      }
      if (normal_ && !p.single_term) fail("not in normal form");
      if (normal_ && p.value.terms().size() == 1 && p.value.terms()[0].coeff != 1)
        fail("repeated coefficient");
      p.value = p.value * m;
    }
    return p;
  }

  Piece power() {
    Piece base = primary();
    if (!accept('^')) return base;
    if (!(base.value == Ordinal::omega(base_))) fail("only w can be raised to a power");
    Piece exp = power();
    if (normal_ && exp.value.is_epsilon()) fail("w^eK is written eK in normal form");
    if (normal_ && exp.value.is_zero()) fail("w^0 is written 1 in normal form");
    return {base_pow(exp.value), true};
  }

  Piece primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t n = number();
      return {Ordinal::finite(n, base_), n != 0 || !normal_};
    }
    if (c == 'w') {
      ++pos_;
      return {Ordinal::omega(base_), true};
    }
    if (c == 'e') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("epsilon index must be a natural number");
      std::uint64_t i = number();
      if (i > UINT32_MAX) fail("epsilon index out of range");
      return {Ordinal::epsilon(static_cast<std::uint32_t>(i), base_), true};
    }
    if (c == '(') {
      ++pos_;
      Ordinal v = sum();
      if (!accept(')')) fail("expected ')'");
      bool single = v.terms().size() == 1;
      return {v, single};
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Base base_;
  bool normal_;
};

} // namespace

std::string to_string(const Ordinal& a) { return render(a, Style{false, a.base()}); }

std::string to_pretty(const Ordinal& a) { return render(a, Style{true, a.base()}); }

Ordinal parse_ordinal(std::string_view text, Base base, OrdinalSyntax syntax) {
  return Parser(text, base, syntax).run();
}

} // namespace wadgeforge
