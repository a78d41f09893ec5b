#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace {

const std::filesystem::path kFixtures = EVACREC_FIXTURE_DIR;
const std::string kCli = EVACREC_CLI_PATH;

int run(const std::string& args) {
  const int status = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string fixture(const std::string& name) { return (kFixtures / name).string(); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, Validate) {
  EXPECT_EQ(run("validate " + fixture("compiegne-flood.json")), 0);
  EXPECT_EQ(run("validate " + fixture("invalid-dangling-shelter.json")), 2);
  EXPECT_EQ(run("validate " + fixture("unparseable.json")), 1);
  EXPECT_EQ(run("validate /nonexistent.json"), 1);
}

TEST(Cli, Solve) {
  const auto out = std::filesystem::temp_directory_path() / "evacrec-cli-plan.json";
  EXPECT_EQ(run("solve " + fixture("compiegne-flood.json") + " --output " + out.string()), 0);
  EXPECT_NE(slurp(out).find("FullCoverage"), std::string::npos);
  std::filesystem::remove(out);
  EXPECT_EQ(run("solve " + fixture("partial-coverage.json")), 3);
  EXPECT_EQ(run("solve " + fixture("compiegne-flood.json") + " --output /nonexistent/dir/p.json"),
            1);
}

TEST(Cli, PrecomputedMatrixGivesSamePlan) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto m = dir / "evacrec-cli-matrix.json";
  const auto a = dir / "evacrec-cli-a.json";
  const auto b = dir / "evacrec-cli-b.json";
  ASSERT_EQ(run("matrix " + fixture("compiegne-flood.json") + " --output " + m.string()), 0);
  ASSERT_EQ(run("solve " + fixture("compiegne-flood.json") + " --output " + a.string()), 0);
  ASSERT_EQ(run("solve " + fixture("compiegne-flood.json") + " --matrix " + m.string() +
                " --output " + b.string()),
            0);
  EXPECT_EQ(slurp(a), slurp(b));
  for (const auto& p : {m, a, b}) std::filesystem::remove(p);
}

TEST(Cli, Oracle) {
  EXPECT_EQ(run("oracle " + fixture("compiegne-flood.json")), 0);
  EXPECT_EQ(run("oracle " + fixture("oversized-oracle.json")), 5);
  EXPECT_EQ(run("oracle --random 5 --seed 3"), 0);
}

TEST(Cli, UnknownSubcommand) { EXPECT_NE(run("frobnicate"), 0); }

}  // namespace
