#include "ordlog/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "ordlog/check.hpp"
#include "ordlog/dot.hpp"
#include "ordlog/errors.hpp"
#include "ordlog/linearizer.hpp"
#include "ordlog/parser.hpp"
#include "ordlog/structure_io.hpp"

namespace ordlog {
namespace {

/// Input problem already phrased for the user.
struct InputFailure {
  std::string message;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFailure{path + ": cannot read file"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename F>
auto load(const std::string& path, F&& reader) {
  std::string text = slurp(path);
  try {
    return reader(text);
  } catch (const SyntaxError& e) {
    throw InputFailure{path + ":" + e.what()};
  } catch (const Error& e) {
    throw InputFailure{path + ": " + e.what()};
  }
}

DependencyStructure load_structure(const std::string& path) {
  return load(path, [](const std::string& t) { return parse_structure(t); });
}

Grammar load_grammar_file(const std::string& path) {
  return load(path, [](const std::string& t) { return load_grammar(t); });
}

std::vector<std::string> tokenize(const std::string& sentence) {
  std::istringstream in(sentence);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

// "2:V2" -> token 2 must carry V2.
void add_requirement(ParseTask& task, const std::string& text) {
  auto colon = text.find(':');
  std::size_t token = 0;
  std::size_t used = 0;
  try {
    token = std::stoul(text.substr(0, colon), &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (colon == std::string::npos || used != colon || colon + 1 == text.size())
    throw InputFailure{"--require expects TOKEN:FEATURE, got '" + text + "'"};
  task.required_features[token].push_back(text.substr(colon + 1));
}

int cmd_check(const std::string& structure_path, const std::string& grammar_path, std::ostream& out) {
  DependencyStructure s = load_structure(structure_path);
  Grammar g = load_grammar_file(grammar_path);
  CheckReport report = check_structure(s, g);
  for (const auto& v : report.violations) out << "violation: " << v.message << "\n";
  for (const auto& f : report.findings) out << "failure: " << f.message << "\n";
  if (report.ok()) out << "ok\n";
  return report.ok() ? kExitOk : kExitNone;
}

struct ParseOptions {
  std::string grammar;
  std::string sentence;
  bool count_only = false;
  std::size_t max = 0;
  long timeout = 0;
  std::vector<std::string> require;
};

int cmd_parse(const ParseOptions& o, std::ostream& out) {
  Grammar g = load_grammar_file(o.grammar);
  ParseTask task;
  task.grammar = &g;
  task.tokens = tokenize(o.sentence);
  if (task.tokens.empty()) throw InputFailure{"empty sentence"};
  if (o.max > 0) task.limits.max_structures = o.max;
  task.limits.timeout = std::chrono::milliseconds(o.timeout);
  for (const auto& r : o.require) add_requirement(task, r);

  ParseResult result = parse(task);
  if (o.count_only) {
    out << result.structures.size() << "\n";
  } else {
    for (std::size_t i = 0; i < result.structures.size(); ++i) {
      if (i) out << "\n";
      out << format_structure(result.structures[i]);
    }
  }
  if (!result.exhausted) return kExitTruncated;
  return result.structures.empty() ? kExitNone : kExitOk;
}

int cmd_linearize(const std::string& grammar_path, const std::string& structure_path, std::ostream& out) {
  Grammar g = load_grammar_file(grammar_path);
  DependencyStructure tree = load_structure(structure_path);
  auto orders = linearize(g, tree);
  for (const auto& o : orders) {
    for (std::size_t i = 0; i < o.surfaces.size(); ++i) out << (i ? " " : "") << o.surfaces[i];
    out << "\n";
  }
  return orders.empty() ? kExitNone : kExitOk;
}

int cmd_export_dot(const std::string& structure_path, std::ostream& out) {
  DependencyStructure s = load_structure(structure_path);
  auto violations = validate(s);
  if (!violations.empty()) throw InputFailure{structure_path + ": invalid structure: " + violations.front().message};
  out << export_dot(s);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Word order domain dependency grammar tools", "ordlog"};
  app.require_subcommand(1);

  std::string structure_path;
  std::string grammar_path;
  auto* check = app.add_subcommand("check", "Validate a structure and license it against a grammar");
  check->add_option("structure", structure_path, "Structure file")->required();
  check->add_option("grammar", grammar_path, "Grammar file")->required();

  ParseOptions po;
  auto* parse_cmd = app.add_subcommand("parse", "Print every structure of a sentence");
  parse_cmd->add_option("grammar", po.grammar, "Grammar file")->required();
  parse_cmd->add_option("sentence", po.sentence, "Whitespace-separated tokens")->required();
  parse_cmd->add_flag("--count-only", po.count_only, "Print only the number of structures");
  parse_cmd->add_option("--max", po.max, "Stop after N structures (exit 3 if more exist)")->check(CLI::PositiveNumber);
  parse_cmd->add_option("--timeout", po.timeout, "Give up after MS milliseconds (exit 3)")->check(CLI::NonNegativeNumber);
  parse_cmd->add_option("--require", po.require, "TOKEN:FEATURE the chosen entry must carry");

  auto* lin = app.add_subcommand("linearize", "Print every admissible order of a structure's tree");
  lin->add_option("grammar", grammar_path, "Grammar file")->required();
  lin->add_option("structure", structure_path, "Structure file supplying words and edges")->required();

  auto* dot = app.add_subcommand("export-dot", "Print a structure as a Graphviz digraph");
  dot->add_option("structure", structure_path, "Structure file")->required();

  std::vector<std::string> argv_store{"ordlog"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*check) return cmd_check(structure_path, grammar_path, out);
    if (*parse_cmd) return cmd_parse(po, out);
    if (*lin) return cmd_linearize(grammar_path, structure_path, out);
    return cmd_export_dot(structure_path, out);
  } catch (const InputFailure& e) {
    err << "ordlog: " << e.message << "\n";
  } catch (const LexicalGap& e) {
    err << "ordlog: unknown token '" << e.token() << "'\n";
  } catch (const Error& e) {
    err << "ordlog: " << e.what() << "\n";
  }
  return kExitInput;
}

}  // namespace ordlog
