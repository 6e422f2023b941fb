#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "hermitlab/error.hpp"
#include "hermitlab_app/app.hpp"

using namespace hermitlab;

int main(int argc, char** argv) {
  CLI::App cli{"Chern and Levi-Civita curvature checks for Hermitian metrics on coordinate charts"};
  app::RunConfig cfg;
  std::vector<std::string> suites{"all"};
  std::vector<std::string> overrides;
  std::string out_path, export_dir;
  bool no_timestamp = false;

  cli.add_option("--metric", cfg.metric, "catalog name, random_polynomial:SEED, or metric JSON file")
      ->capture_default_str();
  cli.add_option("--points", cfg.points, "number of sampled points")->capture_default_str()->check(CLI::PositiveNumber);
  cli.add_option("--seed", cfg.seed, "sampling and fixture seed")->capture_default_str();
  cli.add_option("--tol", cfg.tolerance, "classification tolerance")->capture_default_str();
  cli.add_option("--check-tol", overrides, "override a check tolerance, SUITE.CHECK=VALUE");
  cli.add_option("--suite", suites, "classify, identities, compare, conformal, nilker or all")
      ->delimiter(',')
      ->capture_default_str();
  cli.add_option("--format", cfg.format, "json, csv or human")
      ->check(CLI::IsMember({"json", "csv", "human"}))
      ->capture_default_str();
  cli.add_flag("--oracle", cfg.oracle, "recompute derivative quantities by finite differences");
  cli.add_option("--out", out_path, "write the report here instead of stdout");
  cli.add_option("--conformal-u", cfg.conformal_u, "real conformal exponent u (metric becomes exp(2u) g)")
      ->capture_default_str();
  cli.add_option("--conformal-branch", cfg.conformal_branch, "auto, kahler_like or g_kahler_like")
      ->check(CLI::IsMember({"auto", "kahler_like", "g_kahler_like"}))
      ->capture_default_str();
  cli.add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");
  cli.add_option("--export-catalog", export_dir, "write catalog metric documents to DIR and exit");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return app::kExitUsage;
  }

  try {
    if (!export_dir.empty()) {
      for (const auto& p : app::export_catalog(export_dir)) std::cout << p.string() << '\n';
      return app::kExitPass;
    }
    for (const auto& o : overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) throw InvalidInput("--check-tol expects SUITE.CHECK=VALUE, got '" + o + "'");
      try {
        cfg.tolerances[o.substr(0, eq)] = std::stod(o.substr(eq + 1));
      } catch (const std::exception&) {
        throw InvalidInput("bad tolerance value in '" + o + "'");
      }
    }
    cfg.suites = suites;
    cfg.timestamp = !no_timestamp;
    const app::Report report = app::run(cfg);
    const std::string text = app::format_report(report, cfg.format);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      f << text;
      if (!f) throw Error("cannot write " + out_path);
    }
    return report.passed() ? app::kExitPass : app::kExitCheckFailed;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return app::kExitUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return app::kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return app::kExitCheckFailed;
  } catch (const Error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return app::kExitDomain;
  }
}
