#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "optclaw/cli.hpp"

namespace {

int cli(std::vector<const char*> args) {
  args.insert(args.begin(), "optclaw");
  return optclaw::run_cli(static_cast<int>(args.size()), args.data());
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("argument surface rejections") {
  CHECK(cli({}) == 1);                       // a subcommand is required
  CHECK(cli({"frobnicate"}) == 1);           // unknown subcommand
  CHECK(cli({"solve"}) == 1);                // --preset is required
  CHECK(cli({"solve", "--preset", "nope"}) == 1);
  CHECK(cli({"solve", "--preset", "example1", "--scheme", "upwind9"}) == 1);
  CHECK(cli({"solve", "--preset", "example1", "--cfl", "-1"}) == 1);
  CHECK(cli({"solve", "--preset", "example1", "--eps", "0"}) == 1);
  CHECK(cli({"--help"}) == 0);
}

TEST_CASE("forward solve writes the state and mass records") {
  // example1 computes on [-2,2] but reports only the [-1,1] window: 24
  // cells leave 12 window rows plus the header.
  CHECK(cli({"solve", "--preset", "example1", "--n-cells", "24", "--t-final", "0.05",
             "--out-dir", "cli_out/solve_a"}) == 0);
  const auto state = read_lines("cli_out/solve_a/state_final.csv");
  REQUIRE(state.size() == 13);
  CHECK(state[0] == "x,y,target");
  const auto mass = read_lines("cli_out/solve_a/mass.csv");
  CHECK(mass[0] == "t,mass");
  CHECK(mass.size() >= 3);

  // byte-identical on a repeated run
  CHECK(cli({"solve", "--preset", "example1", "--n-cells", "24", "--t-final", "0.05",
             "--out-dir", "cli_out/solve_b"}) == 0);
  CHECK(slurp("cli_out/solve_a/state_final.csv") == slurp("cli_out/solve_b/state_final.csv"));
  CHECK(slurp("cli_out/solve_a/mass.csv") == slurp("cli_out/solve_b/mass.csv"));
}

TEST_CASE("self-targeted adjoint is identically zero") {
  CHECK(cli({"adjoint", "--preset", "smooth-order", "--n-cells", "24", "--t-final", "0.1",
             "--self-target", "--out-dir", "cli_out/self"}) == 0);
  const auto lines = read_lines("cli_out/self/adjoint_p0.csv");
  REQUIRE(lines.size() == 25);
  CHECK(lines[0] == "x,p0");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_csv(lines[i]);
    REQUIRE(cells.size() == 2);
    CHECK(std::strtod(cells[1].c_str(), nullptr) == 0.0);
  }
  CHECK(!std::filesystem::exists("cli_out/self/adjoint_error.csv"));
}

TEST_CASE("smooth preset adjoint reports its error against the transported data") {
  CHECK(cli({"adjoint", "--preset", "smooth-order", "--n-cells", "32", "--out-dir",
             "cli_out/adj"}) == 0);
  const auto lines = read_lines("cli_out/adj/adjoint_error.csv");
  REQUIRE(lines.size() == 33);
  CHECK(lines[0] == "x,p0,reference,error");
}

TEST_CASE("convergence ladder") {
  CHECK(cli({"convergence", "--preset", "example1", "--out-dir", "cli_out/conv_bad"}) == 1);
  CHECK(cli({"convergence", "--preset", "smooth-order", "--levels", "0"}) == 1);
  CHECK(cli({"convergence", "--preset", "smooth-order", "--levels", "9"}) == 1);

  CHECK(cli({"convergence", "--preset", "smooth-order", "--n-cells", "32", "--levels", "2",
             "--out-dir", "cli_out/conv"}) == 0);
  const auto lines = read_lines("cli_out/conv/rates.csv");
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "N,forward_error,forward_rate,adjoint_error,adjoint_rate");
  const auto first = split_csv(lines[1]);
  REQUIRE(first.size() == 5);
  CHECK(first[0] == "32");
  CHECK(first[2].empty());  // no rate on the coarsest level
  CHECK(first[4].empty());
  const auto second = split_csv(lines[2]);
  CHECK(second[0] == "64");
  CHECK(!second[2].empty());
}

TEST_CASE("optimize runs from both starts and logs the descent") {
  CHECK(cli({"optimize", "--preset", "control-target", "--n-cells", "24", "--max-iters", "2",
             "--out-dir", "cli_out/opt_warm"}) == 0);
  const auto descent = read_lines("cli_out/opt_warm/descent.csv");
  REQUIRE(descent.size() >= 3);  // header + J0 + at least one accepted step
  CHECK(descent[0] == "iter,J,log10_J,alpha,grad_norm");
  const auto row0 = split_csv(descent[1]);
  REQUIRE(row0.size() == 5);
  CHECK(row0[0] == "0");
  CHECK(row0[3].empty());  // no step before the first iteration
  CHECK(row0[4].empty());
  const auto row1 = split_csv(descent[2]);
  CHECK(!row1[3].empty());
  CHECK(read_lines("cli_out/opt_warm/control_final.csv").size() == 25);
  CHECK(read_lines("cli_out/opt_warm/state_final.csv").size() == 25);

  CHECK(cli({"optimize", "--preset", "control-target", "--n-cells", "24", "--max-iters", "1",
             "--cold-start", "--out-dir", "cli_out/opt_cold"}) == 0);
  const auto cold = read_lines("cli_out/opt_cold/descent.csv");
  const double j0_cold = std::strtod(split_csv(cold[1])[1].c_str(), nullptr);
  const double j0_warm = std::strtod(split_csv(descent[1])[1].c_str(), nullptr);
  CHECK(j0_cold > j0_warm);  // the warm start is already close to the target
}

TEST_CASE("verify subcommand and its fault seam") {
  CHECK(cli({"verify", "--filter", "weight"}) == 0);
  CHECK(cli({"verify", "--filter", "no-such-check"}) == 1);
  CHECK(cli({"verify", "--filter", "transpose", "--inject-fault", "flip-adjoint-sign"}) == 3);
  CHECK(cli({"verify", "--filter", "weight", "--inject-fault", "flip-adjoint-sign"}) == 0);
  CHECK(cli({"verify", "--inject-fault", "made-up-fault"}) == 1);
}

TEST_CASE("config file merges under flags") {
  std::filesystem::create_directories("cli_out");
  {
    std::ofstream cfg("cli_out/run.cfg");
    cfg << "# overrides for a quick run\n";
    cfg << "n-cells = 20\n";
    cfg << "scheme = lf   # robust baseline\n";
    cfg << "t-final = 0.05\n";
  }
  CHECK(cli({"solve", "--preset", "example1", "--config", "cli_out/run.cfg", "--out-dir",
             "cli_out/cfg_a"}) == 0);
  // 20 cells over [-2,2]: 10 land in the reported [-1,1] window
  CHECK(read_lines("cli_out/cfg_a/state_final.csv").size() == 11);

  // an explicit flag beats the same key in the file
  CHECK(cli({"solve", "--preset", "example1", "--config", "cli_out/run.cfg", "--n-cells", "16",
             "--out-dir", "cli_out/cfg_b"}) == 0);
  CHECK(read_lines("cli_out/cfg_b/state_final.csv").size() == 9);

  {
    std::ofstream cfg("cli_out/bad_key.cfg");
    cfg << "n-cell = 20\n";  // typo
  }
  CHECK(cli({"solve", "--preset", "example1", "--config", "cli_out/bad_key.cfg"}) == 1);

  {
    std::ofstream cfg("cli_out/bad_line.cfg");
    cfg << "just words\n";
  }
  CHECK(cli({"solve", "--preset", "example1", "--config", "cli_out/bad_line.cfg"}) == 1);
  CHECK(cli({"solve", "--preset", "example1", "--config", "cli_out/missing.cfg"}) == 1);
}

TEST_CASE("runtime failures map to distinct exit codes") {
  // CFL violation inside the fully discrete step is a configuration error
  CHECK(cli({"solve", "--preset", "example1", "--scheme", "eo", "--cfl", "0.9", "--n-cells",
             "16", "--t-final", "0.5", "--out-dir", "cli_out/cfl"}) == 1);
  // a wildly unstable explicit step blows up and reports a solver error
  CHECK(cli({"solve", "--preset", "smooth-order", "--n-cells", "32", "--cfl", "40",
             "--t-final", "50", "--out-dir", "cli_out/blowup"}) == 2);
}
