#include "cli.hpp"

#include "wadgeforge/concil.hpp"
#include "wadgeforge/error.hpp"
#include "wadgeforge/game.hpp"
#include "wadgeforge/ordinal.hpp"
#include "wadgeforge/pda.hpp"
#include "wadgeforge/words.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace wadgeforge::cli {

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

namespace {

// Bad arguments or unreadable files: exit status 1.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bounds shared by the commands. Later sources override earlier ones:
// defaults, config file, WADGEFORGE_* environment, command-line flags.
struct Settings {
  std::uint64_t max_steps = 1000000;
  std::size_t rounds = 50;
  std::size_t samples = 100;
};

std::uint64_t to_count(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long n = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return n;
  } catch (const std::exception&) {
    throw UsageError("setting " + key + " needs a nonnegative integer, got '" + value + "'");
  }
}

void apply(Settings& s, const std::string& key, const std::string& value) {
  if (key == "max_steps") s.max_steps = to_count(key, value);
  else if (key == "rounds") s.rounds = to_count(key, value);
  else if (key == "samples") s.samples = to_count(key, value);
  else throw UsageError("unknown setting " + key);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void load_config(Settings& s, const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
    auto trim = [](std::string t) {
      t.erase(0, t.find_first_not_of(" \t\r"));
      t.erase(t.find_last_not_of(" \t\r") + 1);
      return t;
    };
    apply(s, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void load_env(Settings& s, const EnvLookup& env) {
  for (const char* key : {"max_steps", "rounds", "samples"}) {
    std::string name = "WADGEFORGE_";
    for (const char* c = key; *c; ++c) name += static_cast<char>(std::toupper(static_cast<unsigned char>(*c)));
    if (auto v = env(name)) apply(s, key, *v);
  }
}

// Collected key=value results; --pretty aligns them and uses the Unicode
// forms of ordinals.
class Report {
public:
  void add(std::string key, std::string value, std::string pretty = {}) {
    rows_.push_back({std::move(key), std::move(value), std::move(pretty)});
  }
  void add(std::string key, const Ordinal& o) { add(std::move(key), to_string(o), to_pretty(o)); }

  void print(std::ostream& out, bool pretty) const {
    std::size_t width = 0;
    for (const auto& r : rows_) width = std::max(width, r.key.size());
    for (const auto& r : rows_) {
      if (!pretty) {
        out << r.key << '=' << r.value << '\n';
        continue;
      }
      out << r.key << std::string(width - r.key.size(), ' ') << " : " << (r.pretty.empty() ? r.value : r.pretty)
          << '\n';
    }
  }

private:
  struct Row {
    std::string key, value, pretty;
  };
  std::vector<Row> rows_;
};

std::string kind_of(const Word& w) { return w.is_finite() ? "finite" : "up"; }

// An argument naming an existing file is read; anything else is taken as
// the text itself.
std::string text_or_file(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
  return arg;
}

ExprPtr load_expr(const std::string& arg) {
  return parse_expr(text_or_file(arg), [](const std::string& id) { return resolve_atom(id); });
}

Base parse_base(const std::string& name) {
  if (name == "w" || name == "omega") return Base::Omega;
  if (name == "w1" || name == "omega1") return Base::Omega1;
  throw UsageError("base must be w or w1, got '" + name + "'");
}

std::string cmp_symbol(std::strong_ordering o) {
  if (o == std::strong_ordering::less) return "<";
  if (o == std::strong_ordering::greater) return ">";
  return "=";
}

Strategy make_strategy(const std::string& name, std::uint64_t seed) {
  if (name == "random") return random_strategy(seed, 200, 0);
  if (name == "random_tail") return random_strategy(seed, 200, 1 + seed % 20);
  if (name.rfind("replay:", 0) == 0) {
    const auto colon = name.rfind(':');
    const std::string path = name.substr(7, colon - 7);
    const std::string player = name.substr(colon + 1);
    if (colon < 7 || (player != "1" && player != "2"))
      throw UsageError("expected replay:<transcript file>:<1|2>, got " + name);
    return scripted_strategy(moves_of(parse_transcript(read_file(path)), player == "1" ? 1 : 2));
  }
  return builtin_strategy(name);
}

struct Args {
  // Positional arguments.
  std::vector<std::string> pos;
  std::string base = "w1";
  std::string mode = "tilde";
  unsigned stages = 0;
  unsigned eraser = 1;
  bool invert = false;
  std::string in, out, sigma;
  std::string s1 = "random", s2 = "copy";
  std::optional<std::size_t> rounds;
  std::uint64_t seed = 0;
  bool strict = false;
  bool tournament = false;
  std::string transcript;
};

// Returns the exit status. `raw` receives output printed verbatim after the
// report (an automaton text when no --out is given).
int dispatch(const std::string& verb, const std::string& sub, const Args& a, const Settings& s, Report& r,
             std::string& raw) {
  EvalOptions eval;
  eval.max_steps = s.max_steps;
  auto need = [&](std::size_t n) {
    if (a.pos.size() != n)
      throw UsageError(verb + (sub.empty() ? "" : " " + sub) + " takes " + std::to_string(n) + " argument(s)");
  };

  if (verb == "ord") {
    const Base base = parse_base(a.base);
    if (sub == "eval") {
      need(1);
      r.add("result", parse_ordinal(a.pos[0], base, OrdinalSyntax::Arithmetic));
    } else if (sub == "cmp") {
      need(2);
      const Ordinal x = parse_ordinal(a.pos[0], base, OrdinalSyntax::Arithmetic);
      const Ordinal y = parse_ordinal(a.pos[1], base, OrdinalSyntax::Arithmetic);
      r.add("result", cmp_symbol(compare(x, y)));
    } else {
      need(1);
      const Ordinal x = parse_ordinal(a.pos[0], base, OrdinalSyntax::Normal);
      r.add("result", x);
      r.add("cofinality", to_string(cofinality(x)));
      r.add("fixed_point", is_fixed_point(x) ? "true" : "false");
    }
    return 0;
  }
  if (verb == "hmap") {
    need(1);
    if (!a.invert) {
      r.add("result", h_map(parse_ordinal(a.pos[0], Base::Omega, OrdinalSyntax::Arithmetic)));
      return 0;
    }
    const auto pre = h_preimage(parse_ordinal(a.pos[0], Base::Omega1, OrdinalSyntax::Arithmetic));
    if (!pre) {
      r.add("result", "not_in_image");
      return 2;
    }
    r.add("result", *pre);
    return 0;
  }
  if (verb == "omega") {
    need(1);
    const Ordinal d = parse_ordinal(a.pos[0], Base::Omega1, OrdinalSyntax::Arithmetic);
    const ExprPtr e = build_omega(d);
    r.add("expr", serialize(e));
    r.add("degree", degree(e));
    return 0;
  }
  if (verb == "eval") {
    need(1);
    EraseMode mode;
    if (a.mode == "tilde") mode = EraseMode::Tilde;
    else if (a.mode == "approx") mode = EraseMode::Approx;
    else throw UsageError("mode must be tilde or approx");
    const Word w = parse_word(a.pos[0]);
    const EvalResult res =
        a.stages > 0 ? staged_eval(w, mode, a.stages, 1, eval) : eraser_eval(w, mode, a.eraser, eval);
    if (res.status == EvalResult::Status::Undefined) {
      r.add("status", "undefined");
      return 2;
    }
    if (res.status == EvalResult::Status::NoStabilization) {
      r.add("status", "unsupported");
      return 2;
    }
    r.add("result", to_string(res.word));
    r.add("kind", kind_of(res.word));
    return 0;
  }
  if (verb == "member") {
    need(2);
    const ExprPtr e = load_expr(a.pos[0]);
    const Membership m = member(e, parse_word(a.pos[1]), eval);
    r.add("result", to_string(m));
    return m == Membership::Unsupported ? 2 : 0;
  }
  if (verb == "pda" && sub == "build") {
    need(1);
    const std::string& what = a.pos[0];
    Pda p;
    if (what == "ce" || what == "sigma-omega") {
      if (a.in.empty()) throw UsageError("pda build " + what + " needs --in <automaton file>");
      const Pda l = parse_pda(read_file(a.in));
      const std::vector<Letter> sigma = a.sigma.empty() ? l.alphabet : parse_letters(a.sigma);
      p = what == "ce" ? build_ce(l, sigma) : build_sigma_omega_complete(l, sigma);
    } else {
      if (a.sigma.empty()) throw UsageError("pda build " + what + " needs --sigma <letters>");
      p = make_named(what, parse_letters(a.sigma));
    }
    const std::string text = to_text(p);
    r.add("states", std::to_string(p.states.size()));
    r.add("transitions", std::to_string(p.transitions.size()));
    if (a.out.empty()) {
      raw = text;
      return 0;
    }
    std::ofstream out(a.out);
    if (!(out << text)) throw UsageError("cannot write " + a.out);
    r.add("out", a.out);
    return 0;
  }
  if (verb == "pda" && sub == "run") {
    need(2);
    const Pda p = parse_pda(read_file(a.pos[0]));
    const Word w = parse_word(a.pos[1]);
    r.add("result", accepts(p, w) ? "accept" : "reject");
    r.add("kind", kind_of(w));
    return 0;
  }
  if (verb == "game") {
    need(2);
    const ExprPtr ea = load_expr(a.pos[0]), eb = load_expr(a.pos[1]);
    GameOptions opts;
    opts.allow_first_skip = !a.strict;
    opts.eval = eval;
    const std::size_t rounds = a.rounds.value_or(s.rounds);
    if (a.tournament) {
      std::map<Outcome, std::size_t> count;
      for (std::size_t i = 0; i < s.samples; ++i)
        ++count[play(ea, eb, make_strategy(a.s1, a.seed + i), make_strategy(a.s2, a.seed + i + 1000003), rounds, opts)
                    .outcome];
      r.add("plays", std::to_string(s.samples));
      r.add("p1_wins", std::to_string(count[Outcome::P1Wins]));
      r.add("p2_wins", std::to_string(count[Outcome::P2Wins]));
      r.add("undecided", std::to_string(count[Outcome::Undecided]));
      return 0;
    }
    const PlayResult res =
        play(ea, eb, make_strategy(a.s1, a.seed), make_strategy(a.s2, a.seed + 1000003), rounds, opts);
    r.add("outcome", to_string(res.outcome));
    r.add("rounds", std::to_string(rounds));
    if (res.forfeit) {
      r.add("forfeit", "first_move_skip");
    } else {
      r.add("x", to_string(res.x));
      r.add("y", to_string(res.y));
      r.add("x_in_a", to_string(res.x_in_a));
      r.add("y_in_b", to_string(res.y_in_b));
    }
    if (!a.transcript.empty()) {
      std::ofstream out(a.transcript);
      if (!(out << to_text(res.transcript))) throw UsageError("cannot write " + a.transcript);
      r.add("transcript", a.transcript);
    }
    return res.outcome == Outcome::Undecided ? 2 : 0;
  }
  if (verb == "code" && sub == "h-prefix") {
    need(1);
    r.add("result", to_string(h_prefix(parse_grid(text_or_file(a.pos[0])))));
    return 0;
  }
  if (verb == "code" && sub == "h-decode") {
    need(1);
    const Word w = parse_word(a.pos[0]);
    if (!w.is_finite()) throw UsageError("h-decode takes a finite word");
    const GridDecodeResult d = h_decode(w.stem());
    if (!d.grid) {
      r.add("result", "malformed");
      r.add("reason", d.reason);
      return 2;
    }
    r.add("result", "ok");
    r.add("depth", std::to_string(d.grid->depth()));
    for (unsigned m = 1; m <= d.grid->depth(); ++m) {
      LetterSeq row;
      for (unsigned n = 1; m + n <= d.grid->depth() + 1; ++n) row.push_back(d.grid->at(m, n));
      r.add("row" + std::to_string(m), to_string(row));
    }
    return 0;
  }
  throw UsageError("unknown command");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  CLI::App app{"Conciliating hierarchy and pushdown omega-language toolkit", "wadgeforge"};
  app.require_subcommand(1);
  std::string config;
  bool pretty = false;
  std::optional<std::uint64_t> max_steps;
  app.add_option("--config", config, "key=value settings file (max_steps, rounds, samples)");
  app.add_flag("--pretty", pretty, "aligned output with Unicode ordinals");
  app.add_option("--max-steps", max_steps, "bound on simulated letters before reporting unsupported");

  Args a;
  auto positional = [&](CLI::App* c, const char* what) { c->add_option("args", a.pos, what); };

  CLI::App* ord = app.add_subcommand("ord", "ordinal arithmetic");
  ord->require_subcommand(1);
  for (const char* name : {"eval", "cmp", "cnf"}) {
    CLI::App* c = ord->add_subcommand(name, std::string("ordinal ") + name);
    positional(c, "ordinal text");
    c->add_option("--base", a.base, "w or w1")->capture_default_str();
  }
  CLI::App* hmap = app.add_subcommand("hmap", "the map H from base omega to base omega_1");
  positional(hmap, "ordinal");
  hmap->add_flag("--invert", a.invert, "compute the preimage instead");
  positional(app.add_subcommand("omega", "build an expression of the given degree"), "degree");
  CLI::App* eval = app.add_subcommand("eval", "eraser evaluation");
  positional(eval, "word");
  eval->add_option("--mode", a.mode, "tilde or approx")->capture_default_str();
  eval->add_option("--stages", a.stages, "evaluate erasers n..1 in turn");
  eval->add_option("--eraser", a.eraser, "index of the eraser")->capture_default_str();
  positional(app.add_subcommand("member", "membership of a word"), "expression (file or text), word");
  CLI::App* pda = app.add_subcommand("pda", "pushdown automata");
  pda->require_subcommand(1);
  CLI::App* build = pda->add_subcommand("build", "build a named automaton, ce or sigma-omega");
  positional(build, "name");
  build->add_option("--in", a.in, "automaton of L (ce, sigma-omega)");
  build->add_option("--out", a.out, "output file (default: standard output)");
  build->add_option("--sigma", a.sigma, "base alphabet as a word");
  positional(pda->add_subcommand("run", "acceptance of a word"), "automaton file, word");
  CLI::App* game = app.add_subcommand("game", "conciliating games");
  game->require_subcommand(1);
  CLI::App* play_cmd = game->add_subcommand("play", "play one game");
  positional(play_cmd, "expression A, expression B (file or text)");
  play_cmd->add_option("--s1", a.s1, "copy, embed_copy, skip_forever, random, random_tail, replay:<file>:<player>")
      ->capture_default_str();
  play_cmd->add_option("--s2", a.s2, "as --s1")->capture_default_str();
  play_cmd->add_option("--rounds", a.rounds, "round bound");
  play_cmd->add_option("--seed", a.seed, "seed of random strategies")->capture_default_str();
  play_cmd->add_flag("--strict", a.strict, "player 1 may not skip the first move");
  play_cmd->add_flag("--tournament", a.tournament, "play `samples` seeds and count outcomes");
  play_cmd->add_option("--transcript", a.transcript, "write the transcript to this file");
  CLI::App* code = app.add_subcommand("code", "omega^2 diagonal coding");
  code->require_subcommand(1);
  positional(code->add_subcommand("h-prefix", "code a grid"), "grid file or text");
  positional(code->add_subcommand("h-decode", "decode a coded prefix"), "word");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error=" << e.what() << '\n';
    return 1;
  }

  std::string verb, sub;
  for (CLI::App* c : app.get_subcommands()) {
    verb = c->get_name();
    for (CLI::App* d : c->get_subcommands()) sub = d->get_name();
  }
  Report report;
  std::string raw;
  int status = 0;
  try {
    Settings settings;
    if (config.empty())
      if (auto v = env("WADGEFORGE_CONFIG")) config = *v;
    if (!config.empty()) load_config(settings, config);
    load_env(settings, env);
    if (max_steps) settings.max_steps = *max_steps;
    status = dispatch(verb, sub, a, settings, report, raw);
  } catch (const UsageError& e) {
    err << "error=" << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error=" << e.what() << '\n';
    return 2;
  }
  report.print(out, pretty);
  out << raw;
  return status;
}

} // namespace wadgeforge::cli
