#include "adtcheck/cli/run.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "adtcheck/checker/checker.hpp"
#include "adtcheck/frontend/parser.hpp"
#include "adtcheck/frontend/resolver.hpp"
#include "adtcheck/lowering/lowering.hpp"
#include "adtcheck/terms/text.hpp"
#include "adtcheck/testgen/render.hpp"

namespace adtcheck::cli {

namespace {

struct RunConfig {
  std::vector<std::string> inputs;
  std::string struct_name;
  int max_depth = 8;
  std::string arg_domain = "0,1,2";
  std::size_t fuel = terms::kDefaultFuel;
  std::string format = "text";
  std::string emit_tests;
  bool emit_trs = false;
  std::vector<std::string> overrides;
  unsigned workers = 1;
};

Diagnostic cli_error(std::string file, std::string code, std::string message) {
  return Diagnostic{Severity::error, Span{}, std::move(code), std::move(message), std::move(file)};
}

std::optional<std::vector<std::int64_t>> parse_domain(const std::string &text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || p != item.data() + item.size())
      return std::nullopt;
    out.push_back(v);
  }
  if (out.empty())
    return std::nullopt;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int fail(std::ostream &err, const Diagnostics &diags) {
  print_diagnostics(err, diags);
  return kError;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Bounded contract checker for struct specifications", "adtcheck"};
  app.require_subcommand(1);
  RunConfig cfg;
  CLI::App *check = app.add_subcommand("check", "Explore every reachable state and check the protocol clauses");
  check->add_option("files", cfg.inputs, "Source files (.subj)")->required();
  check->add_option("--struct", cfg.struct_name, "Struct to check (default: the only struct)");
  check->add_option("--max-depth", cfg.max_depth, "Method calls per trace")
      ->default_val(8)
      ->check(CLI::PositiveNumber);
  check->add_option("--arg-domain", cfg.arg_domain, "Comma-separated Int argument values")->default_val("0,1,2");
  check->add_option("--fuel", cfg.fuel, "Rewrite steps per call")->default_val(terms::kDefaultFuel)->check(
      CLI::PositiveNumber);
  check->add_option("--format", cfg.format, "Report format")->default_val("text")->check(
      CLI::IsMember({"text", "json"}));
  check->add_option("--emit-tests", cfg.emit_tests, "Write one .subjtest file per violation into DIR");
  check->add_flag("--emit-trs", cfg.emit_trs, "Print the lowered rewrite system and exit");
  check->add_option("--override", cfg.overrides, "Replace a field default, e.g. capacity=2");
  check->add_option("--workers", cfg.workers, "Concurrent workers per BFS level")->default_val(1)->check(
      CLI::PositiveNumber);
  const std::string footer =
      "Defaults (depth 8, domain 0,1,2) let a capacity-3 buffer reach full, overflow and drain.\n"
      "Exit status: 0 no violations, 1 violations found, 2 usage, input or engine error.";
  app.footer(footer);
  check->footer(footer);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kClean;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kClean;
  } catch (const CLI::ParseError &e) {
    err << "adtcheck: " << e.what() << "\n";
    return kError;
  }
  if (cfg.emit_trs && cfg.format == "json") {
    err << "adtcheck: --emit-trs prints rule text and cannot be combined with --format json\n";
    return kError;
  }
  std::optional<std::vector<std::int64_t>> domain = parse_domain(cfg.arg_domain);
  if (!domain) {
    err << "adtcheck: --arg-domain: expected comma-separated integers, got '" << cfg.arg_domain << "'\n";
    return kError;
  }

  Diagnostics diags;
  std::vector<SourceFile> files;
  for (const std::string &path : cfg.inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      diags.push_back(cli_error(path, "cli.file-not-found", "file not found"));
      continue;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    Checked<SourceFile> parsed = parse_program(buf.str(), path);
    diags.insert(diags.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    if (parsed)
      files.push_back(std::move(*parsed));
  }
  if (has_errors(diags))
    return fail(err, diags);

  Checked<SubjectProgram> program = resolve(files);
  diags.insert(diags.end(), program.diagnostics.begin(), program.diagnostics.end());
  if (!program)
    return fail(err, diags);

  Checked<lowering::LoweredProgram> lowered = lowering::lower_program(*program);
  diags.insert(diags.end(), lowered.diagnostics.begin(), lowered.diagnostics.end());
  if (!lowered)
    return fail(err, diags);

  const std::string first_file = cfg.inputs.front();
  const StructDecl *subject = nullptr;
  if (!cfg.struct_name.empty()) {
    subject = program->find_struct(cfg.struct_name);
    if (!subject)
      diags.push_back(cli_error(first_file, "cli.unknown-struct", "unknown struct '" + cfg.struct_name + "'"));
  } else if (program->structs.size() == 1) {
    subject = &program->structs.front();
  } else if (program->structs.empty()) {
    diags.push_back(cli_error(first_file, "cli.no-struct", "no struct declared"));
  } else {
    diags.push_back(cli_error(first_file, "cli.ambiguous-struct",
                              "several structs declared; choose one with --struct"));
  }
  if (!subject)
    return fail(err, diags);

  std::vector<lowering::FieldOverride> overrides;
  for (const std::string &o : cfg.overrides) {
    std::size_t eq = o.find('=');
    int fi = eq == std::string::npos ? -1 : subject->field_index(o.substr(0, eq));
    if (fi < 0) {
      diags.push_back(cli_error("<override>", "cli.bad-override",
                                eq == std::string::npos ? "expected field=value, got '" + o + "'"
                                                        : "unknown field '" + o.substr(0, eq) + "' of '" +
                                                              subject->name + "'"));
      continue;
    }
    Checked<Expr> value = parse_expression(o.substr(eq + 1), "<override>");
    if (value) {
      const FieldDecl &f = subject->fields[static_cast<std::size_t>(fi)];
      value = resolve_literal(*value, f.type, "<override>");
    }
    diags.insert(diags.end(), value.diagnostics.begin(), value.diagnostics.end());
    if (value)
      overrides.push_back(lowering::FieldOverride{o.substr(0, eq), std::move(*value)});
  }
  if (has_errors(diags))
    return fail(err, diags);
  print_diagnostics(err, diags); // warnings

  if (cfg.emit_trs) {
    out << terms::print_trs(lowered->trs);
    return kClean;
  }

  checker::Bounds bounds;
  bounds.max_depth = cfg.max_depth;
  bounds.arg_domain = *domain;
  bounds.fuel = cfg.fuel;

  checker::Report report;
  checker::Model model;
  try {
    model = checker::make_model(*program, *lowered, subject->name, overrides);
    report = checker::explore(model, bounds, cfg.workers);
  } catch (const terms::EngineError &e) {
    err << first_file << ":1:1: error: " << e.what() << " [engine.error]\n";
    return kError;
  }

  if (cfg.format == "json")
    out << testgen::render_json(report);
  else
    out << testgen::render_text(report);

  if (!cfg.emit_tests.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.emit_tests, ec);
    for (const testgen::TestCaseText &t : testgen::render_tests(report, model)) {
      std::filesystem::path p = std::filesystem::path(cfg.emit_tests) / (t.name + ".subjtest");
      std::ofstream f(p, std::ios::binary);
      f << t.body;
      if (!f) {
        err << p.string() << ":1:1: error: cannot write test file [cli.write-failed]\n";
        return kError;
      }
    }
  }
  return report.violations.empty() ? kClean : kViolations;
}

} // namespace adtcheck::cli
