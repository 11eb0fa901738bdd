#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#ifndef PSEUDOSTAR_CLI
#error "PSEUDOSTAR_CLI must name the command-line binary"
#endif

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int status;
  std::string out;
};

// Runs the binary through the shell, stdout captured, stderr dropped.
CliRun run(const std::string& args) {
  const std::string cmd = std::string(PSEUDOSTAR_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (const std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pseudostar_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    write("left.nwk", "(((1:5,2:6):1,(3:5,4:6):1):10,(7:5,8:5):2,(5:5,6:6):3);\n");
    write("right.nwk", "((1:7,2:8):1,(3:7,4:8):1,(7:7,8:7):2,(5:7,6:8):3);\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  fs::path dir_;
};

TEST_F(Cli, WeightsThenReconstruct) {
  const CliRun w = run("weights --tree " + path("left.nwk") + " --k 5");
  ASSERT_EQ(w.status, 0);
  EXPECT_EQ(w.out.substr(0, 8), "n=8 k=5\n");
  write("left.d", w.out);
  const CliRun r = run("reconstruct --dissim " + path("left.d"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "(1:7,2:8,((3:7,4:8):1,(5:7,6:8):3,(7:7,8:7):2):1);\n");
  write("back.nwk", r.out);
  EXPECT_EQ(run("check --tree " + path("back.nwk") + " --dissim " + path("left.d")).out, "ok\n");
  // serialization depends on vertex ids, so compare through a Newick round trip
  write("norm.nwk", run("normalize --tree " + path("left.nwk") + " --k 5").out);
  EXPECT_EQ(run("normalize --tree " + path("norm.nwk") + " --k 5").out, run("normalize --tree " + path("right.nwk") + " --k 5").out);
}

TEST_F(Cli, RandomPipelineIsStable) {
  const CliRun p = run("random --n 9 --k 4 --seed 17 --positive");
  ASSERT_EQ(p.status, 0);
  EXPECT_EQ(run("random --n 9 --k 4 --seed 17 --positive").out, p.out);
  write("p.nwk", p.out);
  write("p.d", run("weights --tree " + path("p.nwk") + " --k 4").out);
  const CliRun r = run("reconstruct --dissim " + path("p.d"));
  EXPECT_EQ(r.status, 0);
  write("r.nwk", r.out);
  EXPECT_EQ(run("check --tree " + path("r.nwk") + " --dissim " + path("p.d")).status, 0);
  EXPECT_EQ(run("reconstruct --dissim " + path("p.d")).out, r.out);
}

TEST_F(Cli, CheckAndRange) {
  write("right.d", run("weights --tree " + path("right.nwk") + " --k 5").out);
  EXPECT_EQ(run("check --tree " + path("left.nwk") + " --dissim " + path("right.d")).status, 0);
  write("other.nwk", "((1:7,2:8):1,(3:7,4:8):1,(7:7,8:7):2,(5:7,6:9):3);\n");
  EXPECT_EQ(run("check --tree " + path("other.nwk") + " --dissim " + path("right.d")).status, 2);
  EXPECT_EQ(run("range --positive --dissim " + path("right.d")).out,
            "sup=66 (attained), inf=45 (not attained)\nsingleton=no\n");
  EXPECT_EQ(run("range --dissim " + path("right.d")).out, run("range --positive --dissim " + path("right.d")).out);
  EXPECT_EQ(run("range --general --dissim " + path("right.d")).out,
            "sup=+inf (not attained), inf=-inf (not attained)\nsingleton=no\n");
}

TEST_F(Cli, Transforms) {
  const CliRun io = run("transform io --tree " + path("left.nwk") + " --k 5 --split 5,6,7,8");
  EXPECT_EQ(io.status, 0);
  EXPECT_EQ(io.out, "((1:7,2:8):1,(3:7,4:8):1,(5:7,6:8):3,(7:7,8:7):2);\n");
  const CliRun oi = run("transform oi --tree " + path("right.nwk") + " --k 5 --block 5,6,7,8 --weight 10");
  EXPECT_EQ(oi.status, 0);
  write("back.nwk", oi.out);
  EXPECT_EQ(run("normalize --tree " + path("back.nwk") + " --k 5").out, io.out);
  EXPECT_EQ(run("transform io --tree " + path("left.nwk") + " --k 5 --split 7,8").status, 2);
  EXPECT_EQ(run("transform oi --tree " + path("right.nwk") + " --k 5 --block 1,2,3,4 --weight 35 --positive").status,
            2);
  EXPECT_EQ(run("transform oi --tree " + path("right.nwk") + " --k 5 --block 1,3 --weight 1").status, 2);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("frobnicate").status, 1);
  EXPECT_EQ(run("weights --tree " + path("missing.nwk") + " --k 5").status, 1);
  write("broken.nwk", "(1:1,2:2");
  EXPECT_EQ(run("weights --tree " + path("broken.nwk") + " --k 2").status, 1);
  write("short.d", "n=5 k=3\n1 2 3 = 1\n");
  EXPECT_EQ(run("reconstruct --dissim " + path("short.d")).status, 1);
  EXPECT_EQ(run("weights --tree " + path("left.nwk") + " --k 8").status, 2);
  // a family no tree realizes
  std::string bad = "n=6 k=3\n";
  int v = 0;
  for (int c = 3; c <= 6; ++c)
    for (int b = 2; b < c; ++b)
      for (int a = 1; a < b; ++a)
        bad += std::to_string(a) + " " + std::to_string(b) + " " + std::to_string(c) + " = " +
               std::to_string((v++ * 7) % 11) + "\n";
  write("bad.d", bad);
  EXPECT_EQ(run("reconstruct --dissim " + path("bad.d")).status, 2);
  EXPECT_EQ(run("--help").status, 0);
}

}  // namespace
