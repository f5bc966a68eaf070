// Command-line front end: analyze substitutions, export graphs, run the
// two-letter census, and cross-check components against the language oracle.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "subshift/census2.hpp"
#include "subshift/errors.hpp"
#include "subshift/oracle.hpp"
#include "subshift/report.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw subshift::ParseError("cannot read input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Existing files win over inline rules; extension picks the format.
subshift::Substitution load_input(const std::string& input) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_regular_file(input, ec)) {
    const std::string text = read_file(input);
    if (input.size() >= 5 && input.substr(input.size() - 5) == ".json")
      return subshift::parse_substitution_json(text);
    return subshift::Substitution::parse(text);
  }
  if (input.find("->") != std::string::npos) return subshift::Substitution::parse(input);
  throw subshift::ParseError("input file not found: " + input);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw subshift::ParseError("cannot write output file: " + out_path);
  out << text;
}

int run_analyze(const std::string& input, const std::string& format,
                const std::string& out_path) {
  const subshift::Substitution sub = load_input(input);
  const subshift::Analysis a = subshift::analyze(sub);
  if (format == "text") {
    emit(subshift::render_text(sub, a), out_path);
  } else if (format == "json") {
    emit(subshift::render_json(sub, a).dump(2) + "\n", out_path);
  } else {
    throw subshift::ParseError("analyze supports --format text or json");
  }
  return 0;
}

int run_graphs(const std::string& input, const std::string& which,
               const std::string& format, const std::string& out_path) {
  if (format != "dot") throw subshift::ParseError("graphs supports --format dot only");
  const subshift::Substitution sub = load_input(input);
  const subshift::Analysis a = subshift::analyze(sub);
  std::string text;
  if (which == "orbits")
    text = subshift::dot_orbits(sub, a);
  else if (which == "gl")
    text = subshift::dot_boundary(sub, a, subshift::Side::left);
  else if (which == "gr")
    text = subshift::dot_boundary(sub, a, subshift::Side::right);
  else if (which == "gt")
    text = subshift::dot_dynamics(sub, a, subshift::DynamicsGraph::Kind::tame);
  else
    text = subshift::dot_dynamics(sub, a, subshift::DynamicsGraph::Kind::wild);
  emit(text, out_path);
  return 0;
}

int run_census2(int max_image_len, const std::string& format, const std::string& out_path) {
  const subshift::Census2Result r = subshift::census2(max_image_len);
  if (format == "text")
    emit(subshift::render_census2_text(r), out_path);
  else if (format == "json")
    emit(subshift::render_census2_json(r).dump(2) + "\n", out_path);
  else
    throw subshift::ParseError("census2 supports --format text or json");
  return r.all_match() ? 0 : 1;
}

int run_verify(const std::string& input, int depth, int max_len, std::uint64_t budget,
               int power_cap, const std::string& report_path, const std::string& out_path) {
  const subshift::Substitution sub = load_input(input);
  subshift::ComponentCensus census;
  if (report_path.empty()) {
    census = subshift::census(sub);
  } else {
    subshift::json doc;
    try {
      doc = subshift::json::parse(read_file(report_path));
    } catch (const nlohmann::json::parse_error& err) {
      throw subshift::ParseError(std::string("invalid report JSON: ") + err.what());
    }
    census = subshift::parse_report_components(sub, doc);
  }

  const subshift::LanguageSample sample =
      subshift::sample_language(sub, depth, max_len, budget);
  subshift::VerifyOptions opts;
  opts.power_cap = power_cap;
  opts.budget = budget;
  const subshift::VerifyReport report =
      subshift::verify_component_language(sub, census, sample, opts);

  std::ostringstream text;
  text << "verify: depth " << depth << ", max len " << max_len << ", sample "
       << sample.size() << " factors\n";
  for (const subshift::ComponentVerdict& v : report.verdicts) {
    text << "  " << (v.ok ? "ok  " : "FAIL") << " " << v.component;
    if (!v.detail.empty()) text << " (" << v.detail << ")";
    text << "\n";
  }
  text << "result: " << (report.all_ok() ? "PASS" : "FAIL") << "\n";
  emit(text.str(), out_path);
  return report.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimal components of substitution subshifts"};
  app.require_subcommand(1);

  std::string input;
  std::string format = "text";
  std::string graph = "orbits";
  std::string out_path;
  std::string report_path;
  int depth = 8;
  int max_len = 8;
  std::uint64_t budget = 10'000'000;
  int power_cap = 6;
  int max_image_len = 3;

  CLI::App* analyze = app.add_subcommand("analyze", "classify letters and list components");
  analyze->add_option("input", input, "rules file (.sub or .json) or inline rules")
      ->required();
  analyze->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  analyze->add_option("-o,--output", out_path, "write to file instead of stdout");

  CLI::App* graphs = app.add_subcommand("graphs", "export a pipeline graph as DOT");
  graphs->add_option("input", input, "rules file (.sub or .json) or inline rules")
      ->required();
  graphs->add_option("--graph", graph, "orbits, gl, gr, gt, or gw")
      ->required()
      ->check(CLI::IsMember({"orbits", "gl", "gr", "gt", "gw"}));
  std::string graphs_format = "dot";
  graphs->add_option("--format", graphs_format, "dot")->check(CLI::IsMember({"dot"}));
  graphs->add_option("-o,--output", out_path, "write to file instead of stdout");

  CLI::App* census2 = app.add_subcommand("census2", "exhaustive census on two letters");
  census2->add_option("--max-image-len", max_image_len, "image length bound (default 3)")
      ->check(CLI::PositiveNumber);
  census2->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  census2->add_option("-o,--output", out_path, "write to file instead of stdout");

  CLI::App* verify = app.add_subcommand("verify", "cross-check components against the language");
  verify->add_option("input", input, "rules file (.sub or .json) or inline rules")
      ->required();
  verify->add_option("--depth", depth, "sample depth (default 8)")->check(CLI::PositiveNumber);
  verify->add_option("--max-len", max_len, "sampled factor length cap (default 8)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--budget", budget, "letter budget (default 10000000)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--power-cap", power_cap, "wild power cap (default 6)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--report", report_path, "replay components from a JSON report");
  verify->add_option("-o,--output", out_path, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (analyze->parsed()) return run_analyze(input, format, out_path);
    if (graphs->parsed()) return run_graphs(input, graph, graphs_format, out_path);
    if (census2->parsed()) return run_census2(max_image_len, format, out_path);
    return run_verify(input, depth, max_len, budget, power_cap, report_path, out_path);
  } catch (const subshift::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const subshift::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const subshift::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
