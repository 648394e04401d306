// End-to-end checks of the command-line tool: flag handling, output formats,
// exit codes, and byte stability across parallelism settings.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef NULLPOINT_CLI_PATH
#error "NULLPOINT_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

int counter = 0;

RunResult run_cli(const std::string& arguments) {
  const std::string path = "/tmp/nullpoint_cli_test_" + std::to_string(counter++) +
                           "_" + std::to_string((long)getpid()) + ".out";
  const std::string command =
      std::string(NULLPOINT_CLI_PATH) + " " + arguments + " > " + path + " 2>/dev/null";
  const int status = std::system(command.c_str());
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::remove(path.c_str());
  return {WEXITSTATUS(status), buffer.str()};
}

}  // namespace

TEST_CASE("det prints a near-zero value at a known root") {
  const auto result =
      run_cli("det --model rect --E 0.5 --V0 1 --b 0.1 --theta -0.3546");
  REQUIRE(result.exit_code == 0);
  CHECK(std::fabs(std::stod(result.output)) < 1e-3);

  const auto away = run_cli("det --model rect --E 0.5 --V0 1 --b 0.1 --theta 0");
  REQUIRE(away.exit_code == 0);
  CHECK(std::stod(away.output) < 0.0);  // 2 (1 - cosh phi)

  const auto delta = run_cli("det --model delta --E 1 --theta -3.14159265");
  REQUIRE(delta.exit_code == 0);
  CHECK(std::fabs(std::stod(delta.output)) < 1e-6);
}

TEST_CASE("degrees flag converts at the boundary") {
  const auto rad = run_cli("det --model rect --E 0.5 --V0 1 --b 0.1 --theta -0.3546");
  const auto deg = run_cli(
      "det --model rect --E 0.5 --V0 1 --b 0.1 --theta -20.3171 --degrees");
  REQUIRE(rad.exit_code == 0);
  REQUIRE(deg.exit_code == 0);
  CHECK(std::fabs(std::stod(rad.output) - std::stod(deg.output)) < 1e-4);
}

TEST_CASE("roots emits records in both formats") {
  const auto csv = run_cli("roots --model tri --E 0.5 --V0 1 --c 1 "
                           "--theta-min -7 --theta-max -5");
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.output.find("branch_index,theta_rad,theta_deg,length_nm,"
                        "det_residual,matrix_condition\n") == 0);
  CHECK(csv.output.find("-6.085230") != std::string::npos);

  const auto json_run = run_cli("roots --model tri --E 0.5 --V0 1 --c 1 "
                                "--theta-min -7 --theta-max -5 --format json");
  REQUIRE(json_run.exit_code == 0);
  const auto parsed = nlohmann::json::parse(json_run.output);
  CHECK(parsed["schema"] == "nullpoint-report/1");
  CHECK(parsed["config"]["model"] == "tri");
  REQUIRE(parsed["roots"].size() == 1);
  CHECK(std::fabs(parsed["roots"][0]["theta_rad"].get<double>() + 6.0852303) < 1e-5);
}

TEST_CASE("coeffs reports the symmetric-energy solution") {
  const auto result = run_cli(
      "coeffs --model rect --E 0.5 --V0 1 --b 0.1 --branch 0 --format json");
  REQUIRE(result.exit_code == 0);
  const auto parsed = nlohmann::json::parse(result.output);
  CHECK(parsed["coefficients"]["A"] == 1.0);
  CHECK(std::fabs(parsed["coefficients"]["C"].get<double>() - 0.41041) < 1e-4);
  CHECK(std::fabs(parsed["coefficients"]["D"].get<double>() - 0.58959) < 1e-4);
  for (const auto& r : parsed["boundary_residuals"])
    CHECK(std::fabs(r.get<double>()) < 1e-8);
}

TEST_CASE("wavefunction spans the loop and reports continuity") {
  const auto result = run_cli(
      "wavefunction --model rect --E 0.5 --V0 1 --b 0.1 --samples 3");
  REQUIRE(result.exit_code == 0);
  std::istringstream lines(result.output);
  std::string header, first, mid, last, note1, note2;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, mid);
  std::getline(lines, last);
  std::getline(lines, note1);
  std::getline(lines, note2);
  CHECK(header == "x_nm,psi,region");
  CHECK(std::stod(first) == doctest::Approx(-0.09788).epsilon(1e-3));
  CHECK(std::stod(last) == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(note1.find("# junction_residual=") == 0);
  CHECK(note2.find("# closure_residual=") == 0);
  CHECK(std::stod(note2.substr(note2.find('=') + 1)) < 1e-8);
}

TEST_CASE("exit codes") {
  SUBCASE("domain error is 2") {
    CHECK(run_cli("det --model rect --E 1.5 --V0 1 --b 0.1 --theta -1").exit_code == 2);
    CHECK(run_cli("det --model bogus --E 0.5 --theta -1").exit_code == 2);
    CHECK(run_cli("roots --model rect --E 0.5 --V0 1 --b 0.1 --theta-min -1 "
                  "--theta-max -2").exit_code == 2);
    CHECK(run_cli("det --model rect --E 0.5").exit_code == 2);  // parse error
  }
  SUBCASE("no root in window is 3") {
    CHECK(run_cli("roots --model rect --E 0.5 --V0 1 --b 0.1 --theta-min -0.2 "
                  "--theta-max -0.1").exit_code == 3);
    CHECK(run_cli("coeffs --model rect --E 0.5 --V0 1 --b 0.1 --branch 99")
              .exit_code == 3);
  }
  SUBCASE("io failure is 4") {
    CHECK(run_cli("roots --model delta --E 1 --out /nonexistent-dir/x.csv")
              .exit_code == 4);
  }
  SUBCASE("outliers in a report are data, not failures") {
    CHECK(run_cli("repro table1 --jobs 2").exit_code == 0);
  }
}

TEST_CASE("repro reports") {
  SUBCASE("table1 carries 105 rows, the degree finding, and the outliers") {
    const auto result = run_cli("repro table1 --jobs 2");
    REQUIRE(result.exit_code == 0);
    int rows = 0;
    std::istringstream lines(result.output);
    std::string line;
    bool outlier_hi = false;
    while (std::getline(lines, line)) {
      if (!line.empty() && line[0] != '#' && line.find("energy_ev") != 0) ++rows;
      if (line.find("0.99,1,") == 0 && line.find("OUTLIER") != std::string::npos)
        outlier_hi = true;
    }
    CHECK(rows == 105);
    CHECK(outlier_hi);
    CHECK(result.output.find("# note:") != std::string::npos);
  }
  SUBCASE("table2 json summarises the agreement classes") {
    const auto result = run_cli("repro table2 --jobs 2 --format json");
    REQUIRE(result.exit_code == 0);
    const auto parsed = nlohmann::json::parse(result.output);
    CHECK(parsed["cells"].size() == 105);
    CHECK(parsed["summary"]["UNIT-SHIFT"].get<int>() +
              parsed["summary"]["OUTLIER"].get<int>() +
              parsed["summary"]["EXACT"].get<int>() ==
          105);
    bool family_note = false;
    for (const auto& note : parsed["notes"])
      if (note.get<std::string>().find("2 pi / k") != std::string::npos)
        family_note = true;
    CHECK(family_note);
  }
  SUBCASE("fig6 prints the regenerated statistics") {
    const auto result = run_cli("repro fig6 --jobs 2");
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.find("# mean_deg=") != std::string::npos);
    CHECK(result.output.find("stddev_deg=") != std::string::npos);
  }
  SUBCASE("xi-sweep names the emerging family") {
    const auto result = run_cli("repro xi-sweep --format json");
    REQUIRE(result.exit_code == 0);
    const auto parsed = nlohmann::json::parse(result.output);
    CHECK(std::fabs(parsed["limit_theta_rad"].get<double>() + 2.132707) < 1e-5);
    REQUIRE(parsed["points"].size() == 4);
    CHECK(parsed["points"][3]["limit_gap_rad"].get<double>() < 1e-2);
    CHECK(parsed["family"].get<std::string>().find("2 pi n") != std::string::npos);
  }
}

TEST_CASE("output is byte-stable across parallelism settings") {
  const auto serial = run_cli("repro table2 --jobs 1");
  const auto parallel = run_cli("repro table2 --jobs 4");
  REQUIRE(serial.exit_code == 0);
  REQUIRE(parallel.exit_code == 0);
  CHECK(serial.output == parallel.output);

  const auto again = run_cli("repro table2 --jobs 1");
  CHECK(serial.output == again.output);
}
