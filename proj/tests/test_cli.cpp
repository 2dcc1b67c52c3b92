#include "doctest.h"
#include "ce_witness.hpp"
#include "ordinal_gen.hpp"

#include "cli.hpp"
#include "wadgeforge/concil.hpp"
#include "wadgeforge/error.hpp"
#include "wadgeforge/pda.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace wadgeforge;

namespace {

struct Run {
  int status = 0;
  std::string out, err;
  std::map<std::string, std::string> kv;
};

Run invoke(std::vector<std::string> args, std::map<std::string, std::string> env = {}) {
  std::ostringstream out, err;
  Run r;
  r.status = cli::run(args, out, err, [env](const std::string& name) -> std::optional<std::string> {
    auto it = env.find(name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  });
  r.out = out.str();
  r.err = err.str();
  std::istringstream lines(r.out);
  for (std::string line; std::getline(lines, line);)
    if (auto eq = line.find('='); eq != std::string::npos) r.kv.emplace(line.substr(0, eq), line.substr(eq + 1));
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("wadgeforge_cli_" + name)).string();
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

} // namespace

TEST_CASE("cli: golden outputs") {
  CHECK(invoke({"hmap", "e2 + e1 + 4"}).out == "result=e2 + e1 + 5\n");
  CHECK(invoke({"eval", "bb(~a)^w"}).out == "result=b\nkind=finite\n");
  const Run om = invoke({"omega", "e1"});
  CHECK(om.status == 0);
  CHECK(om.kv.at("degree") == "e1");
  CHECK(invoke({"ord", "cmp", "w + 1", "1 + w"}).out == "result=>\n");
  CHECK(invoke({"ord", "eval", "(w + 1)*2"}).out == "result=w*2 + 1\n");
}

TEST_CASE("cli: ordinal commands agree with the library") {
  std::mt19937_64 rng(5);
  const Ordinal zero = parse_ordinal("0", Base::Omega);
  for (int i = 0; i < 200; ++i) {
    const Ordinal a = wf_test::random_ordinal(rng, Base::Omega);
    if (compare(a, zero) == std::strong_ordering::equal) {
      CHECK(invoke({"hmap", "0"}).status == 2);
      continue;
    }
    const Ordinal h = h_map(a);
    CHECK(invoke({"hmap", to_string(a)}).kv.at("result") == to_string(h));
    const Run back = invoke({"hmap", "--invert", to_string(h)});
    CHECK(back.status == 0);
    CHECK(back.kv.at("result") == to_string(a));
    const Ordinal d = wf_test::random_ordinal(rng, Base::Omega1);
    const Run cnf = invoke({"ord", "cnf", to_string(d)});
    CHECK(cnf.kv.at("result") == to_string(d));
    CHECK(cnf.kv.at("cofinality") == to_string(cofinality(d)));
    CHECK(cnf.kv.at("fixed_point") == (is_fixed_point(d) ? "true" : "false"));
    if (compare(d, parse_ordinal("0", Base::Omega1)) != std::strong_ordering::equal) {
      // Degrees outside the constructible range are domain errors in both.
      const Run om = invoke({"omega", to_string(d)});
      ExprPtr e;
      try {
        e = build_omega(d);
      } catch (const Error&) {
        CHECK(om.status == 2);
        continue;
      }
      CHECK(om.kv.at("degree") == to_string(d));
      CHECK(om.kv.at("expr") == serialize(e));
    }
  }
}

TEST_CASE("cli: pretty output uses Unicode ordinals") {
  const Run r = invoke({"--pretty", "omega", "w*2"});
  CHECK(r.out.find("degree : ω₁·2") != std::string::npos);
}

TEST_CASE("cli: exit codes") {
  CHECK(invoke({}).status == 1);
  CHECK(invoke({"frobnicate"}).status == 1);
  CHECK(invoke({"hmap"}).status == 1);
  CHECK(invoke({"eval", "a", "--mode", "sideways"}).status == 1);
  CHECK(invoke({"pda", "run", temp_path("missing.pda"), "a"}).status == 1);
  CHECK(invoke({"--help"}).status == 0);
  const Run bad = invoke({"ord", "cnf", "w +"});
  CHECK(bad.status == 2);
  CHECK(bad.err.rfind("error=", 0) == 0);
  // Back-space on the empty word is undefined in approx mode.
  const Run undefined = invoke({"eval", "~a", "--mode", "approx"});
  CHECK(undefined.status == 2);
  CHECK(undefined.kv.at("status") == "undefined");
  CHECK(invoke({"eval", "~a"}).kv.at("result") == "a");
  CHECK(invoke({"hmap", "--invert", "w^2"}).status == (h_preimage(parse_ordinal("w^2", Base::Omega1)) ? 0 : 2));
}

TEST_CASE("cli: settings precedence") {
  const std::string atom = "atom(named:D1:01)";
  const std::string config = temp_path("settings.cfg");
  write_file(config, "# bounds\nrounds = 3\nsamples=4\n");
  auto rounds = [&](std::vector<std::string> args, std::map<std::string, std::string> env = {}) {
    return invoke(std::move(args), std::move(env)).kv.at("rounds");
  };
  CHECK(rounds({"game", "play", atom, atom}) == "50");
  CHECK(rounds({"--config", config, "game", "play", atom, atom}) == "3");
  CHECK(rounds({"game", "play", atom, atom}, {{"WADGEFORGE_CONFIG", config}}) == "3");
  CHECK(rounds({"--config", config, "game", "play", atom, atom}, {{"WADGEFORGE_ROUNDS", "4"}}) == "4");
  CHECK(rounds({"--config", config, "game", "play", atom, atom, "--rounds", "5"}, {{"WADGEFORGE_ROUNDS", "4"}}) ==
        "5");
  CHECK(invoke({"--config", config, "game", "play", atom, atom, "--tournament"}).kv.at("plays") == "4");
  CHECK(invoke({"game", "play", atom, atom, "--tournament"}, {{"WADGEFORGE_SAMPLES", "6"}}).kv.at("plays") == "6");
  CHECK(invoke({"game", "play", atom, atom}, {{"WADGEFORGE_ROUNDS", "many"}}).status == 1);
  write_file(config, "colour=blue\n");
  CHECK(invoke({"--config", config, "hmap", "1"}).status == 1);
  // A one-step bound leaves an erasing UP word unsupported.
  const std::string tilde = "tilde(" + atom + ")";
  CHECK(invoke({"member", tilde, "0(0~)^w"}, {{"WADGEFORGE_MAX_STEPS", "1"}}).status == 2);
  CHECK(invoke({"--max-steps", "1", "member", tilde, "0(0~)^w"}).kv.at("result") == "unsupported");
}

TEST_CASE("cli: membership and expressions from files") {
  const std::string atom = "atom(named:D1:01)";
  const ExprPtr e = parse_expr(atom, [](const std::string& id) { return resolve_atom(id); });
  const std::string file = temp_path("expr.txt");
  write_file(file, atom + "\n");
  for (const char* w : {"0B0C(0B0C)^w", "0B1C(0B0C)^w", "(01)^w", "0C"}) {
    const std::string expect = to_string(member(e, parse_word(w)));
    CHECK(invoke({"member", atom, w}).kv.at("result") == expect);
    CHECK(invoke({"member", file, w}).kv.at("result") == expect);
  }
}

TEST_CASE("cli: automata build and run") {
  const std::vector<Letter> sigma = parse_letters("01");
  const std::string d1 = temp_path("d1.pda");
  CHECK(invoke({"pda", "build", "D1", "--sigma", "01", "--out", d1}).status == 0);
  const Run printed = invoke({"pda", "build", "D1", "--sigma", "01"});
  CHECK(printed.out.find(to_text(make_named("D1", sigma))) != std::string::npos);

  const std::string base = temp_path("balanced.pda"), ce = temp_path("ce.pda");
  write_file(base, to_text(witness::balanced_blocks_pda()));
  const Run built = invoke({"pda", "build", "ce", "--in", base, "--sigma", "01", "--out", ce});
  REQUIRE(built.status == 0);
  const Pda expect = build_ce(witness::balanced_blocks_pda(), sigma);
  CHECK(built.kv.at("states") == std::to_string(expect.states.size()));
  witness::Builder gen(3);
  for (auto kind : {witness::Kind::Valid, witness::Kind::BadD1, witness::Kind::OutsideL}) {
    const Word w = gen.make(kind).word;
    const Run r = invoke({"pda", "run", ce, to_string(w)});
    CHECK(r.kv.at("result") == (accepts(expect, w) ? "accept" : "reject"));
    CHECK(r.kv.at("kind") == "up");
  }
  CHECK(invoke({"pda", "build", "ce", "--sigma", "01"}).status == 1);
  CHECK(invoke({"pda", "build", "nonesuch", "--sigma", "01"}).status == 2);
}

TEST_CASE("cli: grid coding round trip") {
  const std::string grid = "depth 3\na b a\nb b\na\n";
  const Run coded = invoke({"code", "h-prefix", grid});
  REQUIRE(coded.status == 0);
  const std::string word = coded.kv.at("result");
  CHECK(word == to_string(h_prefix(parse_grid(grid))));
  const Run decoded = invoke({"code", "h-decode", word});
  CHECK(decoded.kv.at("depth") == "3");
  CHECK(decoded.kv.at("row1") == "aba");
  CHECK(decoded.kv.at("row2") == "bb");
  CHECK(decoded.kv.at("row3") == "a");
  const Run bad = invoke({"code", "h-decode", "aCCB"});
  CHECK(bad.status == 2);
  CHECK(bad.kv.at("result") == "malformed");
}

TEST_CASE("cli: games and transcript replay") {
  const std::string atom = "atom(named:D1:01)";
  const std::string transcript = temp_path("transcript.txt");
  const Run first = invoke({"game", "play", atom, atom, "--seed", "9", "--rounds", "12", "--transcript", transcript});
  REQUIRE(first.status == 0);
  CHECK(first.kv.at("outcome") == "P2_WINS");
  CHECK(first.kv.at("x") == first.kv.at("y"));
  const Run again =
      invoke({"game", "play", atom, atom, "--s1", "replay:" + transcript + ":1", "--s2", "copy", "--rounds", "12"});
  CHECK(again.kv.at("x") == first.kv.at("x"));
  CHECK(again.kv.at("outcome") == first.kv.at("outcome"));
  const Run strict = invoke({"game", "play", atom, atom, "--s1", "skip_forever", "--strict"});
  CHECK(strict.kv.at("forfeit") == "first_move_skip");
  const Run tour = invoke({"game", "play", atom, atom, "--tournament"}, {{"WADGEFORGE_SAMPLES", "20"}});
  CHECK(tour.kv.at("p2_wins") == "20");
  CHECK(invoke({"game", "play", atom, atom, "--s1", "mirror"}).status == 2);
}
