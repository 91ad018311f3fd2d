// End-to-end checks of the command-line tool: spawns the built binary.

#include <catch2/catch_amalgamated.hpp>

#include <cinfrbf/csv_io.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct run_result {
  int exit_code = -1;
  std::string output;  // stdout only
};

run_result run(const std::string& args) {
  const std::string cmd = std::string(CINFRBF_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  run_result res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) res.output.append(buf.data(), got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("derive prints the first polynomial") {
  const run_result r = run("derive --order 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("2*u + 2") != std::string::npos);

  const run_result r2 = run("derive --order 2 --expand");
  CHECK(r2.exit_code == 0);
  CHECK(r2.output.find("leading: 4*a^1*u^4") != std::string::npos);

  CHECK(run("derive --order 0").exit_code == 2);
  CHECK(run("derive --order 99").exit_code == 2);
}

TEST_CASE("verify exit codes distinguish certified from refuted") {
  CHECK(run("verify --alpha 2 --dim 4 --rigorous").exit_code == 0);
  CHECK(run("verify --alpha 1/2 --dim 1 --rigorous").exit_code == 3);
  CHECK(run("verify --alpha not_a_number --dim 1 --rigorous").exit_code == 2);

  const run_result pre = run("verify --alpha 2 --dim 1");
  CHECK(pre.exit_code == 0);
  CHECK(pre.output.find("NOT certifying") != std::string::npos);
}

TEST_CASE("alpha-min reports a bracket below two in dimension four") {
  const run_result r = run("alpha-min --dim 4 --tol 1/64");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("minimal certified alpha") != std::string::npos);
}

TEST_CASE("interp round trips centers as queries") {
  const auto pts = tmp("cli_pts.csv");
  const auto vals = tmp("cli_vals.csv");
  const auto query = tmp("cli_query.csv");
  const auto out = tmp("cli_out.csv");
  // 3x3 grid on [0,1]^2, spacing 0.5 > delta 0.4: decoupled and definite
  std::string grid;
  std::string values;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      grid += std::to_string(i * 0.5) + "," + std::to_string(j * 0.5) + "\n";
      values += std::to_string(1.0 + i + 3 * j) + "\n";
    }
  write_file(pts, grid);
  write_file(vals, values);
  write_file(query, grid);

  const auto model_path = tmp("cli_model.txt");
  const run_result r = run("interp --points " + pts.string() + " --values " + vals.string() +
                           " --alpha 2 --delta 2/5 --query " + query.string() + " --out " +
                           out.string() + " --model-out " + model_path.string() +
                           " --min-eig --certify");
  CHECK(r.exit_code == 0);

  const cinfrbf::interpolant model = cinfrbf::read_model(model_path.string());
  CHECK(model.params.alpha == 2.0);
  CHECK(model.params.delta == 0.4);
  CHECK(model.centers.size() == 9);
  CHECK(model.coefficients.size() == 9);

  std::ifstream in(out);
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    const double got = std::stod(line);
    const double want = 1.0 + (row / 3) + 3 * (row % 3);
    CHECK(std::abs(got - want) <= 1e-8 * (1.0 + 9.0));
    ++row;
  }
  CHECK(row == 9);
}

TEST_CASE("interp with an empty query file succeeds with empty output") {
  const auto pts = tmp("cli_pts1.csv");
  const auto vals = tmp("cli_vals1.csv");
  const auto query = tmp("cli_query_empty.csv");
  const auto out = tmp("cli_out_empty.csv");
  write_file(pts, "0.1\n0.9\n");
  write_file(vals, "1\n2\n");
  write_file(query, "");
  const run_result r = run("interp --points " + pts.string() + " --values " + vals.string() +
                           " --alpha 2 --delta 1/4 --query " + query.string() + " --out " + out.string());
  CHECK(r.exit_code == 0);
  std::ifstream in(out);
  std::string line;
  CHECK_FALSE(std::getline(in, line));
}

TEST_CASE("interp refuses a refuted certification with exit code three") {
  const auto pts = tmp("cli_pts2.csv");
  const auto vals = tmp("cli_vals2.csv");
  write_file(pts, "0.1\n0.9\n");
  write_file(vals, "1\n2\n");
  const run_result r = run("interp --points " + pts.string() + " --values " + vals.string() +
                           " --alpha 1/2 --delta 1/4 --certify");
  CHECK(r.exit_code == 3);
}

TEST_CASE("interp reports indefinite systems with exit code four") {
  const auto pts = tmp("cli_pts3.csv");
  const auto vals = tmp("cli_vals3.csv");
  std::string grid, values;
  for (int i = 0; i < 30; ++i) {
    grid += std::to_string(i / 29.0) + "\n";
    values += "1\n";
  }
  write_file(pts, grid);
  write_file(vals, values);
  const run_result r = run("interp --points " + pts.string() + " --values " + vals.string() +
                           " --alpha 2 --delta 1");
  CHECK(r.exit_code == 4);
}

TEST_CASE("bench is reproducible and machine-readable") {
  const auto csv_a = tmp("cli_bench_a.csv");
  const auto csv_b = tmp("cli_bench_b.csv");
  const std::string flags = "bench --dim 1 --levels 2 --delta 0.1 --seed 42 --json - --out ";
  const run_result a = run(flags + csv_a.string());
  const run_result b = run(flags + csv_b.string());
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(a.output.find("\"command\": \"bench\"") != std::string::npos);

  // identical seed => identical table, bit for bit
  std::ifstream fa(csv_a), fb(csv_b);
  const std::string ta((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
  const std::string tb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
  CHECK(ta == tb);
  CHECK(ta.find("kernel,level,n,fill") == 0);

  CHECK(run("bench --dim 1 --levels 2 --target bogus").exit_code == 2);
}

TEST_CASE("missing files map to the parse exit code") {
  CHECK(run("interp --points /nonexistent.csv --values /nonexistent.csv --alpha 2 --delta 1/4")
            .exit_code == 2);
}
