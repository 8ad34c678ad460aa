#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " RHT_CLI_PATH " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::vector<std::string>> tsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, '\t')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / ("rht_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("cohomology of a file and of a standard space") {
  const fs::path d = scratch();
  write(d / "s2.cdga", "name: S2\ngenerators: x:2, y:3\nd y = x^2\n");
  auto a = run("cohomology --algebra " + (d / "s2.cdga").string() + " -D 6");
  auto b = run("cohomology --space S2 -D 6");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto rows = tsv(a.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == std::vector<std::string>{"degree", "dim"});
  CHECK(rows[1] == std::vector<std::string>{"0", "1"});
  CHECK(rows[3] == std::vector<std::string>{"2", "1"});
  CHECK(rows[5] == std::vector<std::string>{"4", "0"});
  fs::remove_all(d);
}

TEST_CASE("hh columns") {
  auto r = run("hh --space S3 --n-max 2 -D 8 --hodge");
  CHECK(r.code == 0);
  auto rows = tsv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].front() == "n");
  CHECK(rows[0].back() == "certified");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].size() == rows[0].size());
    CHECK(rows[i][1] == "1");
    // Weights sum to the total.
    int sum = 0;
    for (std::size_t j = 2; j + 1 < rows[i].size(); ++j) sum += std::stoi(rows[i][j]);
    CHECK(sum == 1);
  }
}

TEST_CASE("derivations and constant maps") {
  const fs::path d = scratch();
  write(d / "s3.cdga", "name: S3\ngenerators: x:3\n");
  write(d / "s2.cdga", "name: S2\ngenerators: x:2, y:3\nd y = x^2\n");
  write(d / "c.map", "source: S3\ntarget: S2\nf x = 0\n");
  auto a = run("aq --algebra " + (d / "s3.cdga").string() + " --module " + (d / "s2.cdga").string() + " --map " +
               (d / "c.map").string() + " --n-max 2 -D 8");
  CHECK(a.code == 0);
  auto rows = tsv(a.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1] == std::vector<std::string>{"1", "1"});
  CHECK(rows[2] == std::vector<std::string>{"2", "0"});
  CHECK(rows[3] == std::vector<std::string>{"3", "1"});

  auto m = run("map-homotopy --algebra " + (d / "s3.cdga").string() + " --module-space S2 --n-max 2 -D 8");
  CHECK(m.code == 0);
  for (const auto& row : tsv(m.out)) CHECK(row.back() != "no");
  fs::remove_all(d);
}

TEST_CASE("loop and verify") {
  auto l = run("loop --space S3 --n-max 3 -D 10");
  CHECK(l.code == 0);
  for (std::size_t i = 1; i < tsv(l.out).size(); ++i) CHECK(tsv(l.out)[i].back() == "yes");

  auto v = run("verify --case s3-id --format tsv --n-max 2 -D 8");
  CHECK(v.code == 0);
  auto rows = tsv(v.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].size() == 10);
  CHECK(rows[2][0] == "s3-id");
  CHECK(rows[2][2] == "1");

  auto rep = run("verify --case s3-id --n-max 2 -D 8");
  CHECK(rep.code == 0);
  CHECK(rep.out.find("s3-id") != std::string::npos);
}

TEST_CASE("output files") {
  const fs::path d = scratch();
  const fs::path out = d / "h.tsv";
  auto r = run("cohomology --space CP2 -D 8 --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == run("cohomology --space CP2 -D 8").out);
  fs::remove_all(d);
}

TEST_CASE("default truncation from the environment") {
  auto r = run("cohomology --space S3", "RHT_TRUNCATE_DEFAULT=5");
  CHECK(r.code == 0);
  CHECK(tsv(r.out).size() == 6);
  CHECK(run("cohomology --space S3", "RHT_TRUNCATE_DEFAULT=x").code == 2);
  CHECK(run("cohomology --space S3", "RHT_TRUNCATE_DEFAULT=-3").code == 2);
}

TEST_CASE("input errors exit with 2") {
  const fs::path d = scratch();
  write(d / "bad.cdga", "name: B\ngenerators: x:2, y:3\nd y = x\n");
  write(d / "syntax.cdga", "name: B\ngenerators: x:2 y:3\n");
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("hh --algebra /nonexistent.cdga").code == 2);
  CHECK(run("hh --algebra " + (d / "bad.cdga").string()).code == 2);
  CHECK(run("hh --algebra " + (d / "syntax.cdga").string()).code == 2);
  CHECK(run("hh --space Q7").code == 2);
  CHECK(run("hh").code == 2);
  CHECK(run("verify --case nope").code == 2);
  CHECK(run("cohomology --space S2 --format xml").code == 2);
  CHECK(run("loop --algebra " + (d / "bad.cdga").string()).code == 2);
  fs::remove_all(d);
}
