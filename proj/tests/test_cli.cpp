// End-to-end tests driving the qspace binary (path in QSPACE_BIN).

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "qspace_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

CliResult run_cli(const std::string& args) {
  const char* bin = std::getenv("QSPACE_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "QSPACE_BIN must point at the qspace binary");
  static int counter = 0;
  const fs::path out_path = scratch_dir() / ("out" + std::to_string(counter) + ".txt");
  const fs::path err_path = scratch_dir() / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = std::string("\"") + bin + "\" " + args + " >" + out_path.string() +
                          " 2>" + err_path.string();
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_all(out_path);
  r.err = read_all(err_path);
  return r;
}

fs::path state_file(const std::string& name, const std::string& json) {
  const fs::path p = scratch_dir() / name;
  write(p, json);
  return p;
}

const char* kHop2 = R"({"modes":2,"statistics":"boson",
  "T":[[{"re":0.0,"im":0.0},{"re":-1.0,"im":0.0}],
       [{"re":-1.0,"im":0.0},{"re":0.0,"im":0.0}]],
  "V":[]})";

}  // namespace

TEST_CASE("product subcommand reproduces the antisymmetric sign") {
  const auto f12 = state_file(
      "f12.json",
      R"({"statistics":"fermion","modes":3,"terms":[{"occ":[0,1,1],"re":1.0,"im":0.0}]})");
  // the swapped-order list |e2 e1) is the canonical state with amplitude -1
  const auto f21 = state_file(
      "f21.json",
      R"({"statistics":"fermion","modes":3,"terms":[{"occ":[0,1,1],"re":-1.0,"im":0.0}]})");
  const auto r =
      run_cli("product --kind asym --left " + f12.string() + " --right " + f21.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out == "-1.000000000000e+00 0.000000000000e+00\n");

  // byte determinism
  const auto again =
      run_cli("product --kind asym --left " + f12.string() + " --right " + f21.string());
  CHECK(again.out == r.out);
}

TEST_CASE("product rejects mismatched kind") {
  const auto b = state_file(
      "b.json",
      R"({"statistics":"boson","modes":2,"terms":[{"occ":[1,0],"re":1.0,"im":0.0}]})");
  const auto r = run_cli("product --kind asym --left " + b.string() + " --right " + b.string());
  CHECK(r.exit_code == 2);
  CHECK(!r.err.empty());
}

TEST_CASE("ccr-check prints a zero residual") {
  const auto fermion = run_cli("ccr-check --stats fermion --modes 3");
  CHECK(fermion.exit_code == 0);
  CHECK(fermion.out == "max residual 0.000000000000e+00\n");

  const auto boson = run_cli("ccr-check --stats boson --modes 2 --nmax 3");
  CHECK(boson.exit_code == 0);
  CHECK(boson.out == "max residual 0.000000000000e+00\n");
}

TEST_CASE("spectrum subcommand prints ascending eigenvalues") {
  const auto h = state_file("hop2.json", kHop2);
  const auto r = run_cli("spectrum --hamiltonian " + h.string() + " --sector 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "-1.000000000000e+00\n1.000000000000e+00\n");

  const auto both = run_cli("spectrum --hamiltonian " + h.string() + " --sector 1 --nmax 2");
  CHECK(both.exit_code == 2);

  const auto neither = run_cli("spectrum --hamiltonian " + h.string());
  CHECK(neither.exit_code == 2);
}

TEST_CASE("apply emits a canonical state document") {
  const auto op = state_file(
      "n0.json",
      R"({"statistics":"boson","terms":[{"re":1.0,"im":0.0,
          "ops":[{"act":"create","mode":0},{"act":"annihilate","mode":0}]}]})");
  const auto st = state_file(
      "two.json",
      R"({"statistics":"boson","modes":2,"terms":[{"occ":[2,0],"re":1.0,"im":0.0}]})");
  const auto r = run_cli("apply --op " + op.string() + " --state " + st.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "{\"statistics\":\"boson\",\"modes\":2,\"terms\":[{\"occ\":[2,0],"
        "\"re\":2.000000000000e+00,\"im\":0.000000000000e+00}]}\n");
}

TEST_CASE("evolve emits a CSV with conserved columns") {
  const auto h = state_file("hop2b.json", kHop2);
  const auto st = state_file(
      "one.json",
      R"({"statistics":"boson","modes":2,"terms":[{"occ":[1,0],"re":1.0,"im":0.0}]})");
  const auto r = run_cli("evolve --hamiltonian " + h.string() + " --state " + st.string() +
                         " --t 1.0 --steps 4");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "step,time,norm,total_n,occ_0,occ_1");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.find(",1.000000000000e+00,1.000000000000e+00,") != std::string::npos);
  }
  CHECK(rows == 5);
}

TEST_CASE("malformed json exits 2 with a byte offset") {
  const auto broken = state_file("broken.json", "{\"statistics\":");
  const auto r = run_cli("product --kind sym --left " + broken.string() + " --right " +
                         broken.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("byte") != std::string::npos);
  CHECK(r.err.find("broken.json") != std::string::npos);
}

TEST_CASE("oracle-compare reports discrepancies") {
  const auto r = run_cli("oracle-compare --stats fermion --modes 3 --particles 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("max inner discrepancy ") != std::string::npos);
  CHECK(r.out.find("max eigenvalue discrepancy ") != std::string::npos);
}

TEST_CASE("selfcheck filters and forced failure") {
  const auto ccr = run_cli("selfcheck --only ccr");
  CHECK(ccr.exit_code == 0);
  CHECK(ccr.out.find("PASS ccr-boson") != std::string::npos);
  CHECK(ccr.out.find("PASS ccr-fermion") != std::string::npos);
  CHECK(ccr.out.find("oracle") == std::string::npos);

  // an absurd tolerance forces the numeric criteria to fail
  const auto forced = run_cli("selfcheck --only oracle-inner --tol 1e-300");
  CHECK(forced.exit_code == 1);
  CHECK(forced.out.find("FAIL oracle-inner") != std::string::npos);

  const auto unknown = run_cli("selfcheck --only nonexistent");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("env tolerance must stay above the floor") {
  const char* bin = std::getenv("QSPACE_BIN");
  REQUIRE(bin != nullptr);
  const fs::path out_path = scratch_dir() / "envout.txt";
  const fs::path err_path = scratch_dir() / "enverr.txt";
  const std::string cmd = std::string("QSPACE_TOL=1e-300 \"") + bin +
                          "\" ccr-check --stats boson --modes 1 >" + out_path.string() +
                          " 2>" + err_path.string();
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
  CHECK(read_all(err_path).find("QSPACE_TOL") != std::string::npos);
}
