// Command-line front end: run the built-in ledger, verify `.ivl` files,
// inspect catalog groups, evaluate expressions.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ivl/errors.hpp"
#include "ivl/ledger.hpp"
#include "ivl/matgroup.hpp"

namespace {

constexpr int kUsage = 2;

int report_exit(const ivl::LedgerReport& rep, const std::string& format) {
  std::cout << (format == "json" ? rep.to_json() + "\n" : rep.to_text());
  if (!rep.diagnostics.empty()) return kUsage;
  return rep.all_passed() ? 0 : 1;
}

ivl::RunOptions run_options(const std::string& mode, unsigned threads) {
  ivl::RunOptions opt;
  opt.mode = mode == "fast" ? ivl::CheckMode::Probabilistic : ivl::CheckMode::Exact;
  opt.threads = threads;
  return opt;
}

void print_diagnostics(const std::vector<ivl::dsl::Diagnostic>& ds, const std::string& file) {
  for (const auto& d : ds) std::cerr << (file.empty() ? "" : file + ":") << d.to_string() << "\n";
}

int run_group(const std::string& name) {
  if (!ivl::catalog::groups().count(name)) {
    std::cerr << "unknown group '" << name << "'; known:";
    for (const auto& [n, gens] : ivl::catalog::groups()) std::cerr << " " << n;
    std::cerr << "\n";
    return kUsage;
  }
  auto g = ivl::close(ivl::catalog::group_generators(name));
  std::cout << g.order() << "\n";
  for (const auto& [ord, count] : g.element_order_histogram())
    std::cout << "  elements of order " << ord << ": " << count << "\n";
  return 0;
}

// "x=1,y=-3/2"
std::map<std::string, std::string> parse_point(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ivl::ParseError("expected VAR=RATIONAL, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

int run_eval(const std::string& expr_text, const std::string& at, const std::string& script_file,
             const std::vector<long>& adjoin) {
  std::vector<ivl::dsl::Diagnostic> diags;
  auto expr = ivl::dsl::parse_expression(expr_text, diags);
  if (!expr) {
    print_diagnostics(diags, "");
    return kUsage;
  }
  std::string source;
  if (!script_file.empty()) {
    std::ifstream in(script_file);
    if (!in) {
      std::cerr << "cannot read " << script_file << "\n";
      return kUsage;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    source = buf.str();
  } else {
    source = "field Q";
    for (std::size_t i = 0; i < adjoin.size(); ++i)
      source += (i ? ", sqrt(" : " adjoin sqrt(") + std::to_string(adjoin[i]) + ")";
    source += ";\n";
    std::vector<std::string> names;
    ivl::dsl::collect_names(**expr, names);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    if (!names.empty()) {
      source += "vars";
      for (const auto& n : names) source += " " + n;
      source += ";\n";
    }
  }
  auto compiled = ivl::compile_source(source);
  if (!compiled.context) {
    print_diagnostics(compiled.diagnostics, script_file);
    return kUsage;
  }
  try {
    ivl::RatFunc f = ivl::evaluate(*compiled.context, **expr);
    if (at.empty()) {
      std::cout << f.to_string() << "\n";
      return 0;
    }
    const auto& vars = ivl::context_vars(*compiled.context);
    std::vector<ivl::FieldElem> point(vars.size());
    std::vector<bool> given(vars.size(), false);
    for (const auto& [name, value] : parse_point(at)) {
      auto idx = vars.index_of(name);
      if (!idx) throw ivl::ParseError("unknown variable '" + name + "'");
      point[*idx] = ivl::FieldElem(ivl::parse_rational(value));
      given[*idx] = true;
    }
    for (auto v : f.support()) {
      if (!given[v]) throw ivl::ParseError("no value given for '" + vars.name(v) + "'");
    }
    std::cout << ivl::eval(f, point).to_string() << "\n";
    return 0;
  } catch (const ivl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify finite matrix-group actions on rational function fields"};
  app.require_subcommand(1);

  std::string section = "all", format = "text", mode = "exact";
  unsigned threads = 1;
  auto* ledger = app.add_subcommand("ledger", "Run the built-in ledger");
  std::vector<std::string> sections = ivl::ledger_sections();
  sections.push_back("all");
  sections.push_back("mutations");
  ledger->add_option("--section", section, "Ledger section")->check(CLI::IsMember(sections));
  ledger->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  ledger->add_option("--mode", mode, "exact, or fast (random evaluation first)")
      ->check(CLI::IsMember({"exact", "fast"}));
  ledger->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 256u));

  std::string file;
  auto* verify = app.add_subcommand("verify", "Check the assertions in an .ivl file");
  verify->add_option("FILE", file, "Script")->required();
  verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--mode", mode, "exact or fast")->check(CLI::IsMember({"exact", "fast"}));
  verify->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 256u));

  std::string group_name;
  auto* group = app.add_subcommand("group", "Order and element orders of a catalog group");
  group->add_option("NAME", group_name, "Catalog group, e.g. 4.33.11")->required();

  std::string expr, at, script;
  std::vector<long> adjoin;
  auto* evalc = app.add_subcommand("eval", "Simplify an expression, or evaluate it at a point");
  evalc->add_option("EXPR", expr, "Expression")->required();
  evalc->add_option("--at", at, "Point, e.g. x=1,y=-1/2");
  evalc->add_option("--script", script, "Resolve names against the bindings of this script");
  evalc->add_option("--adjoin", adjoin, "Radicands adjoined to Q when no script is given")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*ledger) {
      auto claims = ivl::build_ledger(section);
      return report_exit(ivl::run(claims, run_options(mode, threads)), format);
    }
    if (*verify) {
      std::ifstream in(file);
      if (!in) {
        std::cerr << "cannot read " << file << "\n";
        return kUsage;
      }
      std::stringstream buf;
      buf << in.rdbuf();
      return report_exit(ivl::execute(buf.str(), run_options(mode, threads)), format);
    }
    if (*group) return run_group(group_name);
    if (*evalc) return run_eval(expr, at, script, adjoin);
  } catch (const ivl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
