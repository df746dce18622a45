#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qgroupoid/runner.hpp"

using namespace qgroupoid;

namespace {

constexpr int kUsage = 2;

int cmd_run(const std::string& path, const std::vector<std::string>& checks, std::size_t order, std::uint32_t max_degree,
            const std::string& format, const std::string& out_path, bool timing) {
  Scenario sc;
  try {
    sc = load_scenario(path);
    if (!checks.empty()) select_checks(sc, checks);
  } catch (const scenario_error& e) {
    for (const auto& pe : e.errors()) std::cerr << path << ": " << pe.to_string() << "\n";
    return kUsage;
  }
  if (order) sc.order = order;
  if (max_degree) sc.max_degree = max_degree;

  RunReport r = run_scenario(sc);
  std::string text = format == "machine" ? machine_report(r, timing).dump(2) + "\n" : text_report(r, timing);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!(f << text)) {
      std::cerr << "cannot write " << out_path << "\n";
      return kUsage;
    }
    if (format != "machine") std::cout << text;
  }
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qgcheck: exact checks for Hopf algebroids, twists and their classical limits"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one scenario file");
  std::string path, format = "text", out_path;
  std::vector<std::string> checks;
  std::size_t order = 0;
  std::uint32_t max_degree = 0;
  bool timing = false;
  run->add_option("path", path, "scenario file")->required();
  run->add_option("--check", checks, "run only these checks (repeatable)");
  run->add_option("--order", order, "truncation order N")->check(CLI::Range(1, 64));
  run->add_option("--max-degree", max_degree, "maximum probe coefficient degree")->check(CLI::Range(1, 64));
  run->add_option("--report", format, "report format")->check(CLI::IsMember({"text", "machine"}));
  run->add_option("--out", out_path, "write the report here");
  run->add_flag("--timing", timing, "include per-check timings");

  auto* list = app.add_subcommand("list-checks", "list the available checks");
  auto* version = app.add_subcommand("version", "print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  if (*version) {
    std::cout << "qgcheck " << QGROUPOID_VERSION << "\n";
    return 0;
  }
  if (*list) {
    for (const auto& c : check_catalog())
      std::cout << c.name << std::string(28 - c.name.size(), ' ') << to_string(c.family) << "  " << c.summary << "\n";
    return 0;
  }
  return cmd_run(path, checks, order, max_degree, format, out_path, timing);
}
