#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "spdc/cli.hpp"
#include "spdc/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "spdc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = spdc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "spdc_test_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("solve prints the Table 1 row") {
  const Result r = run({"solve", "ppktp"});
  CHECK(r.code == 0);
  CHECK(r.out.find("1141.027 nm") != std::string::npos);
  CHECK(r.out.find("tau_p_min  4.0469 ps") != std::string::npos);

  const Result j = run({"solve", "bbo", "--json"});
  REQUIRE(j.code == 0);
  const json doc = json::parse(j.out);
  CHECK(doc["eta"].get<double>() == doctest::Approx(-1.0).epsilon(0.01));
  CHECK(doc["tau_p_min_ps"].get<double>() == doctest::Approx(0.147).epsilon(0.01));
  CHECK(doc["config_hash"].get<std::string>().size() == 16);
}

TEST_CASE("KDP tau_ps = 0 is reported as an asymptotic optimum") {
  const Result r = run({"solve", "kdp", "--json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(std::abs(doc["eta"].get<double>()) < 1e-3);
  CHECK(doc["K_min"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("codes");
  const fs::path bad = dir / "bad.json";
  std::ofstream(bad) << "{ \"id\": \"x\",\n \"geometry\": ]\n}";
  const Result malformed = run({"solve", bad.string()});
  CHECK(malformed.code == spdc::cli::kConfigError);
  CHECK(malformed.err.find(":2:") != std::string::npos);

  CHECK(run({"solve", (dir / "nope.json").string()}).code == spdc::cli::kConfigError);
  CHECK(run({"figure", "5"}).code == spdc::cli::kBadFigure);
  CHECK(run({"sweep", "ppktp", "--taup", "1:2"}).code == spdc::cli::kConfigError);
  CHECK(run({"jsa", "ppktp", "--taup", "1", "--model", "fast"}).code == spdc::cli::kConfigError);
  CHECK(run({"bogus"}).code == spdc::cli::kConfigError);

  json doc = spdc::io::parse_json_file(spdc::io::bundled_scenario("kdp"));
  doc["tuning_angle_deg"] = 20.0;
  doc["crystal"] = (spdc::io::data_dir() / "crystals" / "kdp_zernike1964.json").string();
  const fs::path noroot = dir / "noroot.json";
  std::ofstream(noroot) << doc.dump();
  CHECK(run({"solve", noroot.string()}).code == spdc::cli::kNoRoot);
}

TEST_CASE("sweep output is deterministic and self-describing") {
  const fs::path a = scratch("sweep_a"), b = scratch("sweep_b");
  for (const fs::path& d : {a, b})
    REQUIRE(run({"sweep", "ppktp", "--taup", "0.5:20:9", "--grid", "64", "--out", d.string()}).code == 0);
  const std::string csv = slurp(a / "ppktp_sweep.csv");
  CHECK(csv == slurp(b / "ppktp_sweep.csv"));
  CHECK(csv.rfind("tau_p_ps,K_gauss,K_exact,status\n", 0) == 0);
  const json side = spdc::io::parse_json_file(a / "ppktp_sweep.csv.json");
  const json solved = json::parse(run({"solve", "ppktp", "--json"}).out);
  CHECK(side["config_hash"] == solved["config_hash"]);
  CHECK(side["model"] == "exact");
  CHECK(side["sampled_minimum"].is_object());

  // Overriding gamma changes the hash.
  const fs::path c = scratch("sweep_c");
  REQUIRE(run({"sweep", "ppktp", "--taup", "1:10:3", "--model", "gauss", "--gamma", "0.2", "--out",
               c.string()}).code == 0);
  CHECK(spdc::io::parse_json_file(c / "ppktp_sweep.csv.json")["config_hash"] != solved["config_hash"]);
}

TEST_CASE("jsa, spectrum and figure outputs") {
  const fs::path d = scratch("grids");
  const Result j = run({"jsa", "bbo", "--taup", "0.147", "--grid", "64", "--out", d.string()});
  REQUIRE(j.code == 0);
  CHECK(fs::exists(d / "bbo_jsa_0.147ps.csv"));
  CHECK(fs::exists(d / "bbo_jsa_0.147ps_modes.csv"));
  const json side = spdc::io::parse_json_file(d / "bbo_jsa_0.147ps.csv.json");
  CHECK(side["model_tag"] == "exact_sinc");
  CHECK(side["K_svd"].get<double>() == doctest::Approx(side["K_integral"].get<double>()).epsilon(1e-9));
  CHECK(side["axes"]["signal"]["points"] == 64);

  REQUIRE(run({"spectrum", "kdp", "--grid", "64", "--out", d.string()}).code == 0);
  const json ell = spdc::io::parse_json_file(d / "kdp_spectrum_0.1ps_ellipse.json");
  CHECK(ell.contains("theta_rad"));
  CHECK(ell["semi_axes_rad_per_ps"].size() == 2);
  CHECK(slurp(d / "kdp_spectrum_0.1ps_signal.csv").rfind("Omega_rad_per_ps,S_normalized\n", 0) == 0);

  REQUIRE(run({"figure", "6", "--grid", "64", "--out", d.string()}).code == 0);
  for (const char* id : {"ppktp", "kdp", "bbo"}) {
    CHECK(fs::exists(d / "fig6" / (std::string(id) + "_fig6_idler.csv.json")));
    CHECK(fs::exists(d / "fig6" / (std::string(id) + "_fig6_ellipse.json")));
  }
  REQUIRE(run({"figure", "2", "--crystal", "kdp", "--out", d.string()}).code == 0);
  CHECK(fs::exists(d / "fig2" / "kdp_fig2.csv"));
  CHECK_FALSE(fs::exists(d / "fig2" / "bbo_fig2.csv"));
}

TEST_CASE("scan command") {
  const fs::path d = scratch("scan");
  REQUIRE(run({"scan", "ppktp", "--range", "1100:1200:5", "--out", d.string()}).code == 0);
  const std::string csv = slurp(d / "ppktp_scan.csv");
  CHECK(csv.rfind("lambda_s_nm,lambda_i_nm,poling_period_nm,tau_ps_ps,tau_pi_ps,eta,swapped,status\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}
