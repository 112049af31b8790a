#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <vector>

#include "pk/suite.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<std::string> collect_inputs(const std::string& path) {
  std::vector<std::string> files;
  if (fs::is_directory(path)) {
    for (const auto& e : fs::directory_iterator(path))
      if (e.path().extension() == ".json") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  return files;
}

int run_reports(const std::string& input, pk::SuiteKind kind, unsigned seed,
                double tol, bool as_json) {
  std::vector<pk::Report> reports;
  for (const std::string& f : collect_inputs(input)) {
    pk::InstanceFile file = pk::parse_instance(f);
    reports.push_back(pk::run_suite(file, kind, seed, tol));
  }
  bool pass = true;
  if (as_json) {
    nlohmann::json out = nlohmann::json::array();
    for (const pk::Report& r : reports) {
      out.push_back(pk::report_json(r));
      pass = pass && r.pass;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (const pk::Report& r : reports) {
      std::cout << pk::report_text(r);
      pass = pass && r.pass;
    }
    std::cout << (pass ? "all: PASS" : "all: FAIL") << "\n";
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boundary-triplet workbench for isometries in indefinite "
               "inner product spaces"};
  app.require_subcommand(1);

  unsigned seed = 7;
  double tol = 1e-9;
  std::string suite = "all";
  bool json_out = false;
  bool text_out = false;
  app.add_option("--seed", seed, "random seed for generated checks");
  app.add_option("--tol", tol, "zero-test tolerance");
  app.add_flag("--json", json_out, "emit JSON");
  app.add_flag("--text", text_out, "emit plain text (default)");

  std::string input;
  auto add_input = [&](CLI::App* cmd) {
    cmd->fallthrough();  // accept the global flags after the subcommand
    cmd->add_option("input", input, "instance file or directory")->required();
  };

  CLI::App* verify = app.add_subcommand("verify", "triplet axioms and "
                                        "extension correspondence");
  add_input(verify);
  CLI::App* weyl = app.add_subcommand("weyl", "gamma-field and Weyl-function "
                                      "identities");
  add_input(weyl);
  CLI::App* resolvent =
      app.add_subcommand("resolvent", "resolvent formulas for extensions");
  add_input(resolvent);
  CLI::App* gres = app.add_subcommand(
      "gres", "colligations and generalized resolvents");
  add_input(gres);
  CLI::App* report = app.add_subcommand("report", "full or selected suite");
  add_input(report);
  report->add_option("--suite", suite, "core|weyl|resolvent|gres|all");

  int dim = 2, kappa = 0, dom = 1;
  bool degenerate = false;
  CLI::App* rnd = app.add_subcommand("random-instance",
                                     "emit a random isometry instance");
  rnd->fallthrough();
  rnd->add_option("--dim", dim, "space dimension");
  rnd->add_option("--kappa", kappa, "negative index");
  rnd->add_option("--dom", dom, "domain dimension");
  rnd->add_flag("--degenerate", degenerate, "force a neutral domain vector");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (rnd->parsed()) {
      pk::IsometryInstance inst =
          pk::random_instance(dim, kappa, dom, degenerate, seed);
      pk::InstanceFile file{inst, std::nullopt, {}, std::nullopt, seed};
      std::cout << pk::dump_instance(file).dump(2) << "\n";
      return 0;
    }
    pk::SuiteKind kind = pk::SuiteKind::all;
    if (verify->parsed()) kind = pk::SuiteKind::core;
    if (weyl->parsed()) kind = pk::SuiteKind::weyl;
    if (resolvent->parsed()) kind = pk::SuiteKind::resolvent;
    if (gres->parsed()) kind = pk::SuiteKind::gres;
    if (report->parsed()) kind = pk::suite_from_string(suite);
    return run_reports(input, kind, seed, tol, json_out && !text_out);
  } catch (const pk::SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const pk::NonIsometric& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
