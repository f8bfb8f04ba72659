#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  std::string cmd = std::string(RUNGE_CLI_PATH) + " " + args + " 2>&1";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string group(const std::string& name) { return std::string(RUNGE_DATA_DIR) + "/" + name + ".json"; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  fs::path d = fs::temp_directory_path() / ("runge_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, AnalyzeExitCodes) {
  CliRun full = run("analyze --input " + group("gl2_3"));
  EXPECT_EQ(full.code, 2) << full.out;
  EXPECT_NE(full.out.find("runge.holds = false"), std::string::npos);

  CliRun x0 = run("analyze --input " + group("borel_5"));
  EXPECT_EQ(x0.code, 0) << x0.out;
  EXPECT_NE(x0.out.find("curve.mu = 6"), std::string::npos) << x0.out;
  EXPECT_NE(x0.out.find("m = 1"), std::string::npos);

  CliRun bad = run("analyze --input " + group("invalid_n2"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("N>2 required"), std::string::npos) << bad.out;

  EXPECT_EQ(run("analyze --input /nonexistent.json").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
}

TEST(Cli, KMustContainKG) {
  // det(G) = {1} for the level-5 unipotent group, so only K = Q(zeta_5) is allowed
  fs::path d = scratch_dir();
  std::ofstream(d / "unip.json") << R"({"N": 5, "generators": [[1,1,0,1]]})";
  CliRun r = run("analyze --input " + (d / "unip.json").string() + " --K full");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("K_G"), std::string::npos) << r.out;
  fs::remove_all(d);
}

TEST(Cli, ConstructIsReproducible) {
  fs::path d = scratch_dir();
  CliRun a = run("construct --input " + group("borel_5") + " --seed 3 --out " + (d / "a.json").string());
  CliRun b = run("construct --input " + group("borel_5") + " --seed 3 --out " + (d / "b.json").string());
  ASSERT_EQ(a.code, 0) << a.out;
  ASSERT_EQ(b.code, 0) << b.out;
  EXPECT_EQ(a.out, b.out);
  std::string ja = slurp(d / "a.json");
  EXPECT_FALSE(ja.empty());
  EXPECT_EQ(ja, slurp(d / "b.json"));
  EXPECT_NE(ja.find("\"config_hash\""), std::string::npos);
  EXPECT_FALSE(fs::exists(d / "a.json.tmp"));

  CliRun v = run("verify --input " + (d / "a.json").string());
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_NE(v.out.find("pass = true"), std::string::npos);
  fs::remove_all(d);
}

TEST(Cli, ConstructGuards) {
  EXPECT_EQ(run("construct --input " + group("gl2_3")).code, 2);
  CliRun g = run("construct --input " + group("borel_5") + " --max-N 4");
  EXPECT_EQ(g.code, 1);
  EXPECT_NE(g.out.find("--allow-large"), std::string::npos);
}

TEST(Cli, VerifyTags) {
  CliRun r = run("verify --tags combinatorial");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("suites[0].tag = combinatorial"), std::string::npos) << r.out;
  EXPECT_EQ(run("verify --tags nonsense").code, 1);
}

TEST(Cli, CompareCsv) {
  CliRun r = run("compare --input " + group("gl2_3") + " " + group("borel_5") + " --s 1 2");
  ASSERT_EQ(r.code, 0) << r.out;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# version", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line, "name,N,absG,mu,s,runge,m,exact,poly,coarse,bilu_parent");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_NE(rows[0].find(",false,NA,NA,NA,NA,"), std::string::npos) << rows[0];
  EXPECT_NE(rows[2].find(",true,1,"), std::string::npos) << rows[2];
  EXPECT_NE(rows[3].find(",false,NA,"), std::string::npos) << rows[3];

  CliRun j = run("compare --input " + group("borel_5") + " --format json");
  EXPECT_EQ(j.code, 0);
  EXPECT_NE(j.out.find("rows[0].bilu_parent"), std::string::npos);
}
