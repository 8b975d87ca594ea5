#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "ringwalk/io.hpp"

namespace fs = std::filesystem;
using namespace ringwalk;

constexpr double kInf = std::numeric_limits<double>::infinity();

namespace {

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "ringwalk_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run_cli(const std::string& args, const fs::path& dir) {
  fs::create_directories(dir);
  std::string cmd = "cd \"" + dir.string() + "\" && \"" + RINGWALK_CLI_PATH + "\" " + args +
                    " >cli_stdout.txt 2>cli_stderr.txt";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// data rows of a csv file, comments and header skipped
std::vector<std::vector<double>> read_csv_rows(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::vector<std::vector<double>> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.1, 1.0, 3.0, 1e-300, 6.02214076e23, -2.5, 1.9999999999999996}) {
    std::string s = io::format_double(v);
    char* end = nullptr;
    double back = std::strtod(s.c_str(), &end);
    CHECK(*end == '\0');
    CHECK(back == v);
  }
  CHECK(io::format_double(kInf) == "inf");
  CHECK(io::format_double(-kInf) == "-inf");
  CHECK(io::format_double(std::nan("")) == "nan");
}

TEST_CASE("parse_gamma accepts numbers and the inf keyword") {
  CHECK(io::parse_gamma("2.5") == 2.5);
  CHECK(io::parse_gamma("4") == 4.0);
  CHECK(std::isinf(io::parse_gamma("inf")));
  CHECK(std::isinf(io::parse_gamma("INF")));
  CHECK(std::isinf(io::parse_gamma("Infinity")));
  CHECK_THROWS_AS(io::parse_gamma(""), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_gamma("abc"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_gamma("2.5x"), std::invalid_argument);
}

TEST_CASE("render_csv layout") {
  io::CsvTable t;
  t.metadata = {{"alpha", "1"}, {"mode", "test"}};
  t.header = {"a", "b"};
  t.rows = {{"1", "2"}, {"3", "4"}};
  CHECK(io::render_csv(t) == "# alpha = 1\n# mode = test\na,b\n1,2\n3,4\n");
}

TEST_CASE("atomic_write_file creates directories and replaces content") {
  fs::path target = scratch_dir() / "nested" / "deep" / "file.txt";
  io::atomic_write_file(target.string(), "first\n");
  CHECK(read_file(target) == "first\n");
  io::atomic_write_file(target.string(), "second\n");
  CHECK(read_file(target) == "second\n");
  CHECK(!fs::exists(target.string() + ".tmp"));
}

TEST_CASE("cli: tiny nearest-neighbor spectrum") {
  fs::path dir = scratch_dir() / "spectrum";
  CHECK(run_cli("run spectrum --n 4 --gamma inf", dir) == 0);
  auto rows = read_csv_rows(dir / "spectrum.csv");
  REQUIRE(rows.size() == 4);
  const double expected[] = {0.0, 2.0, 4.0, 2.0};
  for (int m = 0; m < 4; ++m) {
    CHECK(rows[m][0] == m);
    CHECK(rows[m][2] == doctest::Approx(expected[m]).epsilon(1e-12));
  }
}

TEST_CASE("cli: repeated runs are byte-identical") {
  fs::path a = scratch_dir() / "det_a";
  fs::path b = scratch_dir() / "det_b";
  std::string args = "run dos --n 512 --gamma 2.5 --bins 40";
  CHECK(run_cli(args, a) == 0);
  CHECK(run_cli(args, b) == 0);
  CHECK(read_file(a / "dos.csv") == read_file(b / "dos.csv"));

  std::string fit_args = "run dos-fit --n 512 --gamma 4 --bins 60";
  CHECK(run_cli(fit_args, a) == 0);
  CHECK(run_cli(fit_args, b) == 0);
  CHECK(read_file(a / "dos-fit.json") == read_file(b / "dos-fit.json"));
}

TEST_CASE("cli: dos-fit json recovers the quartic band exponents") {
  fs::path dir = scratch_dir() / "dosfit";
  CHECK(run_cli("run dos-fit --n 10000 --gamma 4 --bins 200", dir) == 0);
  auto j = nlohmann::json::parse(read_file(dir / "dos-fit.json"));
  CHECK(j["config"]["gamma"] == "4");
  CHECK(j["result"]["converged"].get<bool>());
  CHECK(j["result"]["params"]["alpha"].get<double>() == doctest::Approx(1.0).epsilon(0.1));
  CHECK(j["result"]["params"]["beta"].get<double>() == doctest::Approx(1.5).epsilon(0.1));
}

TEST_CASE("cli: json format for a time series") {
  fs::path dir = scratch_dir() / "series_json";
  CHECK(run_cli("run return --n 128 --gamma inf --kind quantum --tmin 1 --tmax 10 --ppd 5 "
                "--format json --out ret",
                dir) == 0);
  auto j = nlohmann::json::parse(read_file(dir / "ret.json"));
  CHECK(j["config"]["gamma"] == "inf");
  CHECK(j["result"]["columns"] == nlohmann::json::array({"t", "value"}));
  CHECK(j["result"]["rows"].size() == 6);
  CHECK(j["result"]["rows"][0][0].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("cli: exit codes") {
  fs::path dir = scratch_dir() / "codes";
  CHECK(run_cli("run spectrum --n 64 --gamma 1.5", dir) == 1);
  CHECK(run_cli("run spectrum --n 5000 --gamma 2 --method diag", dir) == 2);
  CHECK(run_cli("selfcheck --list", dir) == 0);
  CHECK(run_cli("bogus", dir) == 1);
  CHECK(run_cli("run spectrum --n 64", dir) == 1);  // gamma missing
  CHECK(run_cli("run nosuch --n 64 --gamma 2", dir) == 1);
  CHECK(run_cli("--version", dir) == 0);
}

TEST_CASE("cli: figure recipes emit one file per curve plus a script") {
  fs::path dir = scratch_dir() / "figures";
  CHECK(run_cli("run figure2 --n 128 --gammas 2,inf --out fig2", dir) == 0);
  int csv_count = 0;
  for (const char* name :
       {"fig2_classical_return_gamma2.csv", "fig2_classical_msd_gamma2.csv",
        "fig2_quantum_return_gamma2.csv", "fig2_quantum_msd_gamma2.csv",
        "fig2_classical_return_gammainf.csv", "fig2_classical_msd_gammainf.csv",
        "fig2_quantum_return_gammainf.csv", "fig2_quantum_msd_gammainf.csv"}) {
    if (fs::exists(dir / name)) ++csv_count;
  }
  CHECK(csv_count == 8);
  CHECK(fs::exists(dir / "fig2.gp"));
  std::string script = read_file(dir / "fig2.gp");
  CHECK(script.find("logscale") != std::string::npos);
  CHECK(script.find("fig2_quantum_msd_gammainf.csv") != std::string::npos);

  CHECK(run_cli("run figure1 --n 256 --bins 40 --out fig1", dir) == 0);
  CHECK(fs::exists(dir / "fig1_dos_gamma2.csv"));
  CHECK(fs::exists(dir / "fig1_analytic_gammainf.csv"));
  CHECK(fs::exists(dir / "fig1_fit_gamma3.csv"));
  CHECK(fs::exists(dir / "fig1_inset.csv"));
  CHECK(fs::exists(dir / "fig1.gp"));
  auto inset = read_csv_rows(dir / "fig1_inset.csv");
  CHECK(inset.size() == 4);

  CHECK(run_cli("run figure3 --n 128 --gammas 4 --out fig3", dir) == 0);
  CHECK(fs::exists(dir / "fig3_exact_gamma4.csv"));
  CHECK(fs::exists(dir / "fig3_spa_gamma4.csv"));
  CHECK(fs::exists(dir / "fig3.gp"));
}

TEST_CASE("cli: selfcheck passes") {
  fs::path dir = scratch_dir() / "selfcheck";
  CHECK(run_cli("selfcheck", dir) == 0);
  std::string out = read_file(dir / "cli_stdout.txt");
  CHECK(out.find("[PASS] spectrum-oracle") != std::string::npos);
  CHECK(out.find("[FAIL]") == std::string::npos);
}
