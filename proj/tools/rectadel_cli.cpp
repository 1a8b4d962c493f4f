#include "rectadel/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv)
{
  CLI::App app{"rectadel: exact verification suites for the rectilinear flag models"};
  std::string config_path, out_path, window_spec;
  std::vector<std::string> suites;
  long long seed = -1;
  bool list_suites = false;
  app.add_option("--config", config_path, "configuration file (JSON)");
  app.add_option("--suite", suites, "suite to run (repeatable)");
  app.add_option("--seed", seed, "override the seed");
  app.add_option("--window", window_spec, "override the window as wmin:wmax,zmin:zmax");
  app.add_option("--out", out_path, "report output path");
  app.add_flag("--list-suites", list_suites, "list available suites and exit");
  CLI11_PARSE(app, argc, argv);

  if (list_suites) {
    for (const auto& n : rectadel::all_suite_names()) std::cout << n << "\n";
    return 0;
  }

  rectadel::RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "cannot open config: " << config_path << "\n";
        return 2;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      cfg = rectadel::config_from_json_text(ss.str());
    }
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (!suites.empty()) cfg.suites = suites;
    if (!out_path.empty()) cfg.output_path = out_path;
    if (!window_spec.empty()) {
      int a, b, c, d;
      if (std::sscanf(window_spec.c_str(), "%d:%d,%d:%d", &a, &b, &c, &d) != 4) {
        std::cerr << "bad --window, expected wmin:wmax,zmin:zmax\n";
        return 2;
      }
      cfg.win = rectadel::window_validate(a, b, c, d);
    }
    for (const auto& s : cfg.suites)
      if (!rectadel::is_suite_name(s)) {
        std::cerr << "unknown suite: " << s << "\n";
        return 2;
      }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  rectadel::RunReport rep = rectadel::run(cfg);
  std::cout << rectadel::report_summary(rep);
  if (!cfg.output_path.empty()) {
    std::ofstream out(cfg.output_path);
    out << rectadel::report_to_json(rep, true);
  }
  return rep.all_pass() ? 0 : 1;
}
