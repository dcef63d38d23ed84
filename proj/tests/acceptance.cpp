// One line per acceptance criterion. Exit status 1 if any selected check fails.
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "spdc/errors.hpp"
#include "spdc/validation.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<std::string> only;
  std::string data = spdc::io::data_dir().string();
  int grid = 512;
  app.add_option("--only", only, "run only these check ids (c1..c8)");
  app.add_option("--data", data, "data directory");
  app.add_option("--grid", grid, "grid points per axis")->check(CLI::Range(16, 2048));
  CLI11_PARSE(app, argc, argv);

  try {
    const spdc::validation::Context ctx(data, spdc::GridSpec{grid, 5.0});
    const auto& ids = only.empty() ? spdc::validation::check_ids() : only;
    bool all = true;
    for (const auto& id : ids) {
      const auto r = spdc::validation::run_check(id, ctx);
      all = all && r.pass;
      fmt::print("{} {} {} ({:.2f} s): {}\n", r.pass ? "PASS" : "FAIL", id,
                 spdc::validation::check_title(id), r.seconds, r.detail);
      std::cout.flush();
    }
    return all ? 0 : 1;
  } catch (const spdc::Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
}
