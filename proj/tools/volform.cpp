#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "volform/dsl/elaborate.hpp"
#include "volform/dsl/parser.hpp"
#include "volform/dsl/printer.hpp"
#include "volform/runner.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw volform::Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_file(const std::string& target) {
  return fs::exists(target) || target.ends_with(".vf") || target.find('/') != std::string::npos;
}

volform::Scenario load(const std::string& target) {
  if (!looks_like_file(target)) return volform::builtin_scenario(target);
  const auto doc = volform::dsl::parse(read_file(target));
  return volform::dsl::elaborate(doc, fs::path(target).stem().string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for algebraic volume density computations"};
  app.require_subcommand(1);

  volform::RunOptions opts;
  std::string target;
  std::string format = "text";
  auto* check = app.add_subcommand("check", "Run the checks of a document or built-in scenario");
  check->add_option("target", target, "Document path or scenario name (see 'volform scenarios')")->required();
  check->add_option("--seed", opts.seed, "Seed for sampled points")->capture_default_str();
  check->add_option("--degree-bound", opts.degree_bound, "Degree bound for kernels and semi-compatibility")
      ->check(CLI::Range(0, 64))
      ->capture_default_str();
  check->add_option("--lnd-bound", opts.lnd_bound, "Nilpotency bound for flows")
      ->check(CLI::Range(0, 4096))
      ->capture_default_str();
  check->add_option("--points", opts.points, "Sample points for Condition (A)")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  check->add_option("--jobs", opts.jobs, "Checks run in parallel")->check(CLI::Range(1, 256))->capture_default_str();
  check->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  check->add_flag("--timings", opts.timings, "Include wall times in the report");

  app.add_subcommand("scenarios", "List built-in scenarios");
  app.add_subcommand("kinds", "List check kinds");

  std::string parse_path;
  bool print_doc = false;
  auto* parse = app.add_subcommand("parse", "Syntax-check a document");
  parse->add_option("file", parse_path, "Document path")->required();
  parse->add_flag("--print", print_doc, "Print the canonical form of the document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  if (app.got_subcommand("scenarios")) {
    for (const auto& [n, d] : volform::builtin_catalog()) std::cout << n << "\n    " << d << '\n';
    return 0;
  }
  if (app.got_subcommand("kinds")) {
    for (const auto& k : volform::dsl::check_kinds()) std::cout << k.signature << "\n    " << k.summary << '\n';
    return 0;
  }
  if (app.got_subcommand("parse")) {
    try {
      const auto doc = volform::dsl::parse(read_file(parse_path));
      if (print_doc) {
        std::cout << volform::dsl::print(doc);
      } else {
        std::cout << parse_path << ": ok, " << doc.statements.size() << " statements\n";
      }
      return 0;
    } catch (const volform::Error& e) {
      std::cerr << parse_path << ":" << e.what() << '\n';
      return kUsage;
    }
  }

  volform::Scenario scenario;
  try {
    scenario = load(target);
  } catch (const volform::dsl::SourceError& e) {
    std::cerr << target << ":" << e.what() << '\n';
    return kUsage;
  } catch (const volform::Error& e) {
    std::cerr << "volform: " << e.what() << '\n';
    return kUsage;
  }

  const auto report = volform::run(scenario, opts, target);
  std::cout << (format == "json" ? volform::to_json(report) : volform::to_text(report));
  if (const auto unknown = report.count(volform::Status::Unknown)) {
    std::cerr << "warning: " << unknown << " check(s) inconclusive (UNKNOWN)\n";
  }
  return report.exit_code();
}
