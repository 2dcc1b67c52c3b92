#include "wadgeforge/concil.hpp"

#include "wadgeforge/error.hpp"

#include <cctype>
#include <charconv>

namespace wadgeforge {

namespace {

constexpr std::string_view kDualPrefix = "bullet-dual:";

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Call {
  std::string_view name;
  std::vector<std::string_view> args;
  bool has_parens = false;
};

// Splits `name(arg, arg, ...)` at top-level commas; braces quote letter names.
Call split_call(std::string_view text) {
  text = trim(text);
  Call c;
  std::size_t i = 0;
  while (i < text.size() && (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
  c.name = text.substr(0, i);
  if (c.name.empty()) throw ParseError("expected an expression at '" + std::string(text) + "'");
  std::string_view rest = trim(text.substr(i));
  if (rest.empty()) return c;
  if (rest.front() != '(' || rest.back() != ')')
    throw ParseError("malformed call '" + std::string(text) + "'");
  c.has_parens = true;
  std::string_view inner = rest.substr(1, rest.size() - 2);
  int depth = 0;
  bool brace = false;
  std::size_t start = 0;
  for (std::size_t k = 0; k < inner.size(); ++k) {
    const char ch = inner[k];
    if (brace) {
      if (ch == '}') brace = false;
      continue;
    }
    if (ch == '{') brace = true;
    else if (ch == '(') ++depth;
    else if (ch == ')') {
      if (--depth < 0) throw ParseError("unbalanced parentheses in '" + std::string(text) + "'");
    } else if (ch == ',' && depth == 0) {
      c.args.push_back(trim(inner.substr(start, k - start)));
      start = k + 1;
    }
  }
  if (depth != 0 || brace) throw ParseError("unbalanced parentheses in '" + std::string(text) + "'");
  c.args.push_back(trim(inner.substr(start)));
  return c;
}

void arity(const Call& c, std::size_t lo, std::size_t hi) {
  if (!c.has_parens || c.args.size() < lo || c.args.size() > hi)
    throw ParseError("wrong number of arguments to " + std::string(c.name));
}

// `key=value` or nullopt when the argument has no top-level '='.
std::optional<std::pair<std::string_view, std::string_view>> keyed(std::string_view arg) {
  const auto eq = arg.find('=');
  if (eq == std::string_view::npos) return std::nullopt;
  const auto key = trim(arg.substr(0, eq));
  for (char ch : key)
    if (!std::isalpha(static_cast<unsigned char>(ch))) return std::nullopt;
  return std::pair{key, trim(arg.substr(eq + 1))};
}

ExprPtr parse_node(std::string_view text, const AtomResolver& resolve);

ExprPtr parse_atom(const Call& c, const AtomResolver& resolve) {
  arity(c, 1, 2);
  const std::string id(c.args[0]);
  if (id.empty()) throw ParseError("empty atom id");
  std::optional<Ordinal> deg;
  if (c.args.size() == 2) {
    auto kv = keyed(c.args[1]);
    if (!kv || kv->first != "degree") throw ParseError("unknown atom option '" + std::string(c.args[1]) + "'");
    deg = parse_ordinal(kv->second, Base::Omega1);
  }
  AtomPtr lang;
  if (id.rfind(kDualPrefix, 0) == 0) {
    lang = bullet_dual_language(parse_node(std::string_view(id).substr(kDualPrefix.size()), resolve));
  } else if (resolve) {
    lang = resolve(id);
  }
  return make_atom(id, std::move(lang), std::move(deg));
}

ExprPtr parse_sum(const Call& c, const AtomResolver& resolve) {
  arity(c, 2, 4);
  ExprPtr big = parse_node(c.args[0], resolve);
  ExprPtr small = parse_node(c.args[1], resolve);
  std::vector<Letter> plus, minus;
  for (std::size_t i = 2; i < c.args.size(); ++i) {
    auto kv = keyed(c.args[i]);
    if (!kv) throw ParseError("expected plus= or minus= in sum");
    auto letters = parse_letters(kv->second);
    if (letters.empty()) throw ParseError("empty letter set in sum");
    if (kv->first == "plus") plus = std::move(letters);
    else if (kv->first == "minus") minus = std::move(letters);
    else throw ParseError("unknown sum option '" + std::string(kv->first) + "'");
  }
  return make_sum(std::move(big), std::move(small), std::move(plus), std::move(minus));
}

ExprPtr parse_node(std::string_view text, const AtomResolver& resolve) {
  const Call c = split_call(text);
  const auto& n = c.name;
  if (n == "empty") {
    if (c.has_parens) throw ParseError("empty takes no arguments");
    return make_empty();
  }
  if (n == "atom") return parse_atom(c, resolve);
  if (n == "sum") return parse_sum(c, resolve);
  if (n == "scalar") {
    arity(c, 2, 2);
    std::uint64_t k = 0;
    const auto s = c.args[1];
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
    if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("bad scalar '" + std::string(s) + "'");
    return make_scalar(parse_node(c.args[0], resolve), k);
  }
  if (n == "dflag") {
    arity(c, 2, 2);
    return make_dflag(parse_node(c.args[0], resolve), parse_letter(c.args[1]));
  }
  arity(c, 1, 1);
  ExprPtr inner = parse_node(c.args[0], resolve);
  if (n == "tilde") return make_tilde(inner);
  if (n == "approx") return make_approx(inner);
  if (n == "bullet") return make_bullet(inner);
  if (n == "complement") return make_complement(inner);
  throw ParseError("unknown expression '" + std::string(n) + "'");
}

// The letter sets make_sum allocates when none are given.
std::pair<Letter, Letter> auto_sides(const Expr& sum) {
  const ExprPtr probe = make_sum(sum.base, sum.small);
  return {probe->plus.front(), probe->minus.front()};
}

void write(const ExprPtr& e, std::string& out) {
  switch (e->node) {
    case Node::Empty: out += "empty"; return;
    case Node::Atom:
      out += "atom(" + e->atom_id;
      if (e->degree_note) out += ",degree=" + to_string(*e->degree_note);
      out += ')';
      return;
    case Node::Sum: {
      out += "sum(";
      write(e->base, out);
      out += ',';
      write(e->small, out);
      const auto [p, m] = auto_sides(*e);
      if (!(e->plus.size() == 1 && e->plus.front() == p)) out += ",plus=" + to_string(e->plus);
      if (!(e->minus.size() == 1 && e->minus.front() == m)) out += ",minus=" + to_string(e->minus);
      out += ')';
      return;
    }
    case Node::Scalar:
      out += "scalar(";
      write(e->base, out);
      out += ',' + std::to_string(e->times) + ')';
      return;
    case Node::DFlag:
      out += "dflag(";
      write(e->base, out);
      out += ',' + to_string(e->d) + ')';
      return;
    case Node::Tilde: out += "tilde("; break;
    case Node::Approx: out += "approx("; break;
    case Node::Bullet: out += "bullet("; break;
    case Node::Complement: out += "complement("; break;
  }
  write(e->base, out);
  out += ')';
}

} // namespace

ExprPtr parse_expr(std::string_view text, const AtomResolver& resolve) { return parse_node(text, resolve); }

std::string serialize(const ExprPtr& e) {
  if (!e) throw PreconditionError("null expression");
  std::string out;
  write(e, out);
  return out;
}

} // namespace wadgeforge
