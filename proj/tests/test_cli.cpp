#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "uip/cli.hpp"
#include "uip/parser.hpp"
#include "uip/render.hpp"

using namespace uip;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "uip");
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

const char* kWorkedGamma = "[1](q & p), [2](s | r), [2]r => [3]r, [2]s";
const char* kWorkedResult =
    "<1>~q | <2>((~r | ~s) & (~r | ~r)) | <2>((~r | ~s) & (~r | ~r)) | [2]((s | ~r | ~s) & (s | ~r | ~r)) | [3]r\n";

}  // namespace

TEST_CASE("prove") {
  const Outcome kd = run({"prove", "--logic", "kd", "=> ~[1]false"});
  CHECK(kd.code == cli::kOk);
  CHECK(kd.out.rfind("=> ~[1]false   [RNeg]\n", 0) == 0);
  CHECK(kd.out.find("[BoxD]") != std::string::npos);

  const Outcome kt = run({"prove", "--logic", "kt", "p => <1>(p & q)"});
  CHECK(kt.code == cli::kNegative);
  CHECK(kt.out == "not derivable\n");

  CHECK(run({"prove", "-l", "KT", "=> [1]p -> p"}).code == cli::kOk);
  CHECK(run({"prove", "=> [1]p -> p"}).code == cli::kNegative);
}

TEST_CASE("prove emits valid JSON and LaTeX") {
  const Outcome j = run({"prove", "--logic", "kt", "--format", "json", "[1](p -> q), [1]p => [1]q"});
  REQUIRE(j.code == cli::kOk);
  const Json doc = Json::parse(j.out);
  CHECK(validate_derivation_document(doc).empty());
  CHECK(doc["logic"] == "kt");

  const Outcome neg = run({"prove", "--format", "json", "=> p"});
  CHECK(neg.code == cli::kNegative);
  const Json verdict = Json::parse(neg.out);
  CHECK(verdict["schema"] == "verdict/1");
  CHECK(verdict["derivable"] == false);

  const Outcome tex = run({"prove", "--format", "latex", "p => p"});
  CHECK(tex.out.find("\\begin{prooftree}") != std::string::npos);
}

TEST_CASE("interpolate") {
  const Outcome post = run({"interpolate", "--logic", "k", "--forget", "p", "p & q"});
  CHECK(post.code == cli::kOk);
  CHECK(post.out == "~~q\n");

  // The worked example, as the table value of a sequent and as the
  // pre-interpolant of the corresponding implication.
  const Outcome raw = run({"interpolate", "--forget", "p", "--raw", kWorkedGamma});
  CHECK(raw.code == cli::kOk);
  CHECK(raw.out == kWorkedResult);
  const Outcome pre = run({"interpolate", "--logic", "k", "--forget", "p", "--side", "pre",
                           "[1](q & p) & [2](s | r) & [2]r -> [3]r | [2]s"});
  CHECK(pre.out == kWorkedResult);

  const Outcome verified = run({"interpolate", "--forget", "p", "--verify-bound", "4", "p & q"});
  CHECK(verified.code == cli::kOk);
  CHECK(verified.out.find("vocab_ok: true\nimplication_ok: true\nextremality_ok: true (checked up to weight 4") !=
        std::string::npos);

  const Outcome j = run({"interpolate", "--forget", "p,q", "--format", "json", "--verify-bound", "3", "p & q & r"});
  const Json doc = Json::parse(j.out);
  CHECK(doc["schema"] == "interpolant/1");
  CHECK(doc["forget"] == Json::array({"p", "q"}));
  CHECK(doc["report"]["extremality_ok"] == true);
  CHECK(formula_from_json(doc["interpolant"]) == parse_formula(doc["text"].get<std::string>()));
}

TEST_CASE("eliminate and countermodel") {
  const Outcome e = run({"eliminate", "forall p. p"});
  CHECK(e.code == cli::kOk);
  CHECK(e.out == "false\n");
  const Json doc = Json::parse(run({"eliminate", "--format", "json", "exists p. p & q"}).out);
  CHECK(doc["schema"] == "elimination/1");
  CHECK(doc["trace"].size() == 1);

  const Outcome m = run({"countermodel", "--logic", "kd", "p => <1>(p & q)"});
  CHECK(m.code == cli::kOk);
  const Outcome mj = run({"countermodel", "--logic", "kt", "--format", "json", "p => <1>(p & q)"});
  CHECK(validate_model_document(Json::parse(mj.out)).empty());
  const Outcome none = run({"countermodel", "--logic", "kt", "=> [1]p -> p"});
  CHECK(none.code == cli::kNegative);
  CHECK(none.out == "no countermodel up to depth 1\n");
  CHECK(run({"countermodel", "--depth", "0", "=> [1]p"}).code == cli::kNegative);
}

TEST_CASE("input from stdin and from a file") {
  CHECK(run({"prove", "-"}, "p => p\n").code == cli::kOk);
  CHECK(run({"interpolate", "--forget", "p", "-"}, "p & q").out == "~~q\n");

  const std::string path = "uip_cli_input.txt";
  {
    std::ofstream f(path);
    f << "[1]p => [1]p\n";
  }
  CHECK(run({"prove", "--file", path}).code == cli::kOk);
  std::remove(path.c_str());
  CHECK(run({"prove", "--file", path}).code == cli::kParseError);
}

TEST_CASE("exit codes for bad input") {
  const Outcome parse = run({"prove", "p => => q"});
  CHECK(parse.code == cli::kParseError);
  CHECK(parse.err.find("^") != std::string::npos);

  const Outcome l1 = run({"prove", "=> forall p. p"});
  CHECK(l1.code == cli::kParseError);
  CHECK(l1.err.find("second-order construct") != std::string::npos);

  CHECK(run({}).code == cli::kParseError);
  CHECK(run({"prove"}).code == cli::kParseError);
  CHECK(run({"prove", "--logic", "s5", "=> p"}).code == cli::kParseError);
  CHECK(run({"interpolate", "p"}).code == cli::kParseError);
  CHECK(run({"interpolate", "--forget", "p,p", "p"}).code == cli::kParseError);
  CHECK(run({"interpolate", "--forget", "p,q", "--raw", "p => q"}).code == cli::kParseError);
  CHECK(run({"interpolate", "--forget", "p", "--verify-bound", "0", "p"}).code == cli::kParseError);
  CHECK(run({"eliminate", "forall p. forall p. p"}).code == cli::kParseError);
  CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("text output re-parses and runs are reproducible") {
  const std::vector<std::vector<std::string>> calls{
      {"interpolate", "--logic", "kt", "--forget", "p", "<1>(p & q) -> [2]p"},
      {"interpolate", "--logic", "kd", "--forget", "q", "--side", "pre", "[1](p | q)"},
      {"eliminate", "--logic", "kt", "forall p. [1]p -> q"},
  };
  for (const auto& args : calls) {
    const Outcome a = run(args), b = run(args);
    CHECK(a.code == cli::kOk);
    CHECK(a.out == b.out);
    std::string line = a.out;
    line.pop_back();
    CHECK_NOTHROW(parse_formula(line));
  }
  const std::vector<std::string> proof{"prove", "--logic", "kt", "--format", "json", "[1][2]p => [2]p | q"};
  CHECK(run(proof).out == run(proof).out);
}
