#include "uip/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include "uip/interpolation.hpp"
#include "uip/kripke.hpp"
#include "uip/parser.hpp"
#include "uip/prover.hpp"
#include "uip/render.hpp"
#include "uip/second_order.hpp"

namespace uip::cli {

namespace {

struct Config {
  std::string logic = "k";
  std::string format = "text";
  std::string input;
  std::string file;
  std::string forget;
  std::string side = "post";
  std::optional<std::size_t> verify_bound;
  std::optional<std::size_t> depth;
  bool raw = false;
};

// Input problems that are the caller's fault but not grammar errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "latex") return Format::Latex;
  return Format::Text;
}

std::string read_input(const Config& cfg, std::istream& in) {
  const bool inline_given = !cfg.input.empty();
  const bool file_given = !cfg.file.empty();
  if (inline_given == file_given) throw UsageError("give exactly one input: an argument, '-' for stdin, or --file");
  std::string text;
  if (file_given) {
    std::ifstream f(cfg.file);
    if (!f) throw UsageError("cannot read " + cfg.file);
    text.assign(std::istreambuf_iterator<char>(f), {});
  } else if (cfg.input == "-") {
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    text = cfg.input;
  }
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

Json report_json(const InterpolantReport& r) {
  Json j{{"vocab_ok", r.vocab_ok},
         {"implication_ok", r.implication_ok},
         {"extremality_ok", r.extremality_ok},
         {"extremality_checked_up_to", r.extremality_checked_up_to},
         {"candidates", r.candidates},
         {"partners", r.partners}};
  if (r.counterexample) j["counterexample"] = to_json(*r.counterexample);
  return j;
}

int do_prove(const Config& cfg, Logic logic, const std::string& text, std::ostream& out) {
  const Sequent s = parse_sequent(text);
  const ProofResult result = prove(logic, s);
  const Format format = parse_format(cfg.format);
  if (!result) {
    if (format == Format::Json)
      out << Json{{"schema", "verdict/1"}, {"logic", std::string(to_string(logic))}, {"sequent", to_json(s)},
                  {"derivable", false}}.dump()
          << "\n";
    else
      out << "not derivable\n";
    return kNegative;
  }
  out << render(logic, *result.derivation(), format);
  if (format == Format::Json) out << "\n";
  return kOk;
}

int do_interpolate(const Config& cfg, Logic logic, const std::string& text, std::ostream& out) {
  std::vector<std::string> forget;
  try {
    forget = parse_variable_list(cfg.forget);
  } catch (const ParseError& e) {
    throw UsageError("--forget: " + e.message());
  }
  const Format format = parse_format(cfg.format);
  const InterpolantSide side = cfg.side == "pre" ? InterpolantSide::Pre : InterpolantSide::Post;

  Formula result;
  std::optional<InterpolantReport> report;
  if (cfg.raw) {
    if (forget.size() != 1) throw UsageError("--raw forgets exactly one variable");
    if (cfg.verify_bound) throw UsageError("--verify-bound does not apply to --raw");
    result = forget_sequent(logic, forget[0], parse_sequent(text));
  } else {
    InterpolationProblem problem{logic, forget, parse_formula(text), side};
    if (cfg.verify_bound) {
      if (*cfg.verify_bound == 0) throw UsageError("--verify-bound must be at least 1");
      report = verify_uniform(problem, *cfg.verify_bound);
      result = report->interpolant;
    } else {
      result = interpolant(problem);
    }
  }

  if (format == Format::Json) {
    Json j{{"schema", "interpolant/1"},
           {"logic", std::string(to_string(logic))},
           {"side", cfg.raw ? "raw" : cfg.side},
           {"forget", forget},
           {"interpolant", to_json(result)},
           {"text", render_text(result)}};
    if (report) j["report"] = report_json(*report);
    out << j.dump() << "\n";
  } else {
    out << render(result, format) << "\n";
    if (report) {
      out << "vocab_ok: " << (report->vocab_ok ? "true" : "false") << "\n";
      out << "implication_ok: " << (report->implication_ok ? "true" : "false") << "\n";
      out << "extremality_ok: " << (report->extremality_ok ? "true" : "false") << " (checked up to weight "
          << report->extremality_checked_up_to << ", " << report->candidates << " candidates, " << report->partners
          << " partners)\n";
      if (report->counterexample) out << "counterexample: " << render_text(*report->counterexample) << "\n";
    }
  }
  return kOk;
}

int do_eliminate(const Config& cfg, Logic logic, const std::string& text, std::ostream& out) {
  const Formula f = parse_formula(text, Level::L2);
  const Elimination e = eliminate_quantifiers(logic, f);
  const Format format = parse_format(cfg.format);
  if (format == Format::Json) {
    Json trace = Json::array();
    for (const auto& step : e.trace)
      trace.push_back(Json{{"var", step.variable}, {"before", to_json(step.before)}, {"after", to_json(step.after)}});
    out << Json{{"schema", "elimination/1"},
                {"logic", std::string(to_string(logic))},
                {"result", to_json(e.result)},
                {"text", render_text(e.result)},
                {"trace", std::move(trace)}}
               .dump()
        << "\n";
  } else {
    out << render(e.result, format) << "\n";
  }
  return kOk;
}

int do_countermodel(const Config& cfg, Logic logic, const std::string& text, std::ostream& out) {
  const Sequent s = parse_sequent(text);
  const std::size_t depth = cfg.depth.value_or(modal_depth(s));
  const auto model = countermodel(logic, s, depth);
  const Format format = parse_format(cfg.format);
  if (!model) {
    if (format == Format::Json)
      out << Json{{"schema", "verdict/1"}, {"logic", std::string(to_string(logic))}, {"sequent", to_json(s)},
                  {"countermodel", false}, {"depth", depth}}.dump()
          << "\n";
    else
      out << "no countermodel up to depth " << depth << "\n";
    return kNegative;
  }
  out << render(logic, *model, format);
  if (format == Format::Json) out << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proof search, uniform interpolation and countermodels for the modal logics K, KD and KT.", "uip"};
  app.require_subcommand(1);
  Config cfg;

  const std::vector<std::string> logics{"k", "kd", "kt"};
  const std::vector<std::string> formats{"text", "json", "latex"};
  auto common = [&](CLI::App* sub, const std::string& input_help) {
    sub->add_option("--logic,-l", cfg.logic, "k, kd or kt")->check(CLI::IsMember(logics, CLI::ignore_case));
    sub->add_option("--format,-f", cfg.format, "text, json or latex")->check(CLI::IsMember(formats));
    sub->add_option("input", cfg.input, input_help + " ('-' reads stdin)");
    sub->add_option("--file", cfg.file, "read the input from a file");
  };

  auto* prove_cmd = app.add_subcommand("prove", "search for a derivation of a sequent");
  common(prove_cmd, "sequent, e.g. \"p, [1]q => [1]q\"");

  auto* interp_cmd = app.add_subcommand("interpolate", "uniform interpolant of a formula");
  common(interp_cmd, "formula (a sequent with --raw)");
  interp_cmd->add_option("--forget", cfg.forget, "comma-separated variables to forget")->required();
  interp_cmd->add_option("--side", cfg.side, "pre or post")->check(CLI::IsMember({"pre", "post"}));
  interp_cmd->add_option("--verify-bound", cfg.verify_bound, "check extremality against all partners up to this weight");
  interp_cmd->add_flag("--raw", cfg.raw, "print the table value for a sequent instead");

  auto* elim_cmd = app.add_subcommand("eliminate", "remove propositional quantifiers");
  common(elim_cmd, "formula with forall/exists");

  auto* model_cmd = app.add_subcommand("countermodel", "search for a refuting Kripke model");
  common(model_cmd, "sequent");
  model_cmd->add_option("--depth", cfg.depth, "tree height bound (default: modal depth)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  std::string text;
  try {
    for (auto& c : cfg.logic) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const Logic logic = *parse_logic(cfg.logic);
    text = read_input(cfg, in);
    if (prove_cmd->parsed()) return do_prove(cfg, logic, text, out);
    if (interp_cmd->parsed()) return do_interpolate(cfg, logic, text, out);
    if (elim_cmd->parsed()) return do_eliminate(cfg, logic, text, out);
    return do_countermodel(cfg, logic, text, out);
  } catch (const ParseError& e) {
    err << e.annotate(text) << "\n";
    return kParseError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace uip::cli
