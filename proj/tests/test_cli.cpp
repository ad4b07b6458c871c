#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "shrira/cli.hpp"
#include "shrira/errors.hpp"
#include "shrira/spectral_ops.hpp"
#include "shrira/spf2.hpp"

using namespace shrira;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliDir : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("shrira-cli-" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::vector<fs::path> runs() const {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir_)) out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
  }

  fs::path dir_;
};

}  // namespace

TEST(ParseComplex, Forms) {
  EXPECT_EQ(cli::parse_complex("1.5"), Complex(1.5, 0));
  EXPECT_EQ(cli::parse_complex("-2i"), Complex(0, -2));
  EXPECT_EQ(cli::parse_complex("0.5-1e-3i"), Complex(0.5, -1e-3));
  EXPECT_EQ(cli::parse_complex("i"), Complex(0, 1));
  EXPECT_ANY_THROW(cli::parse_complex("abc"));
  EXPECT_ANY_THROW(cli::parse_complex(""));
}

TEST(InitialCondition, Modes) {
  const GridSpec g = GridSpec::square(16);
  const SpectralField f = cli::parse_initial_condition("modes:(1,0)=0.5,(2,-1)=0.25-0.5i", g);
  EXPECT_TRUE(f.is_real());
  EXPECT_EQ(f(1, 0), Complex(0.5));
  EXPECT_EQ(f(-1, 0), Complex(0.5));
  EXPECT_EQ(f(-2, 1), std::conj(f(2, -1)));
  EXPECT_ANY_THROW(cli::parse_initial_condition("modes:(9,0)=1", g));
  EXPECT_ANY_THROW(cli::parse_initial_condition("gauss:s=1", g));
}

TEST(InitialCondition, Random) {
  const GridSpec g = GridSpec::square(32);
  const SpectralField a = cli::parse_initial_condition("random:s=3:seed=4:norm=0.5:hs=2", g);
  EXPECT_NEAR(sobolev_norm(a, 2.0), 0.5, 1e-14);
  EXPECT_TRUE(x_mean_zero(a));
  EXPECT_TRUE(a.identical(cli::parse_initial_condition("random:s=3:seed=4:norm=0.5:hs=2", g)));
  EXPECT_FALSE(x_mean_zero(cli::parse_initial_condition("random:s=3:seed=4:mean0=0", g)));
  EXPECT_ANY_THROW(cli::parse_initial_condition("random:s=3:seed=4:color=red", g));
  EXPECT_ANY_THROW(cli::parse_initial_condition("random:s=abc:seed=4", g));
}

TEST_F(CliDir, FileInitialConditionIsRegridded) {
  const GridSpec g = GridSpec::square(16);
  const SpectralField f = cli::parse_initial_condition("modes:(1,2)=1", g);
  save_field(f, dir_ / "f.spf2");
  const SpectralField big = cli::parse_initial_condition("file:" + (dir_ / "f.spf2").string(), GridSpec::square(32));
  EXPECT_EQ(big.grid().modes_x, 32);
  EXPECT_EQ(big(1, 2), f(1, 2));
  EXPECT_EQ(cli::parse_initial_condition("file:" + (dir_ / "f.spf2").string(), GridSpec::square(32), false)
                .grid()
                .modes_x,
            16);
  const Result r = run_cli({"field-info", "--ic", "file:" + (dir_ / "f.spf2").string()});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  // the conjugate mode (-1,-2) is added by the real synthesis
  EXPECT_NEAR(j["l2"].get<double>(), std::sqrt(2.0), 1e-15);
}

TEST(Cli, DirichletRow) {
  const Result r = run_cli({"dirichlet", "--alpha", "3.14159265358979", "--Q", "10"});
  EXPECT_EQ(r.code, cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["a"], 22);
  EXPECT_EQ(j["q"], 7);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"dirichlet", "--alpha", "0.3"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"dirichlet", "--alpha", "0.3", "--Q", "0.5"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"solve", "--grid", "17", "--ic", "random:s=2:seed=1"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"--format", "xml", "poisson"}).code, cli::kUsage);
}

TEST_F(CliDir, ExitCodes) {
  const std::string out = dir_.string();
  Result ok = run_cli({"--out", out, "solve", "--grid", "16", "--dt", "0.01", "--T", "0.05", "--ic",
                       "random:s=3:seed=1:norm=0.3"});
  EXPECT_EQ(ok.code, cli::kOk) << ok.err;
  Result breach = run_cli({"--out", out, "probe-product", "--s", "1", "--samples", "3", "--ceiling", "0.01"});
  EXPECT_EQ(breach.code, cli::kCeilingBreach) << breach.err;
  Result blow = run_cli({"--out", out, "solve", "--grid", "16", "--dt", "0.01", "--T", "0.05", "--ic",
                         "random:s=3:seed=1:norm=0.3", "--blowup", "1e-9"});
  EXPECT_EQ(blow.code, cli::kNumerical) << blow.err;
  Result window = run_cli({"--out", out, "probe-kernel", "--kmax", "2", "--jmax", "1"});
  EXPECT_NE(window.code, cli::kOk);
}

TEST_F(CliDir, SolveArtifactsAndManifest) {
  const Result r = run_cli({"--out", dir_.string(), "--seed", "9", "solve", "--grid", "16", "--dt", "0.01", "--T",
                            "0.03", "--ic", "random:s=3:seed=1:norm=0.3"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto rd = runs();
  ASSERT_EQ(rd.size(), 1u);
  for (const char* name : {"manifest.json", "trajectory.json", "initial.spf2", "final.spf2"}) {
    EXPECT_TRUE(fs::exists(rd[0] / name)) << name;
  }
  const auto m = nlohmann::json::parse(slurp(rd[0] / "manifest.json"));
  EXPECT_EQ(m["subcommand"], "solve");
  EXPECT_EQ(m["rng_seed"], 9);
  EXPECT_EQ(m["params"]["grid"], "16");
  const auto tr = nlohmann::json::parse(slurp(rd[0] / "trajectory.json"));
  EXPECT_EQ(tr["times"].size(), 4u);
  const SpectralField fin = load_field(rd[0] / "final.spf2");
  EXPECT_EQ(fin.grid().modes_x, 16);
}

TEST_F(CliDir, ReportsAreReproducibleAndReplayable) {
  const std::vector<std::string> args = {"--out", dir_.string(), "--seed", "3", "--format", "both",
                                         "probe-commutator", "--s", "1.5", "--samples", "6"};
  ASSERT_EQ(run_cli(args).code, cli::kOk);
  ASSERT_EQ(run_cli(args).code, cli::kOk);
  auto rd = runs();
  ASSERT_EQ(rd.size(), 2u);
  EXPECT_EQ(slurp(rd[0] / "commutator.json"), slurp(rd[1] / "commutator.json"));
  EXPECT_EQ(slurp(rd[0] / "commutator.csv"), slurp(rd[1] / "commutator.csv"));

  const Result rep = run_cli({"--replay", (rd[0] / "manifest.json").string()});
  ASSERT_EQ(rep.code, cli::kOk) << rep.err;
  rd = runs();
  ASSERT_EQ(rd.size(), 3u);
  for (const auto& d : rd) EXPECT_EQ(slurp(d / "commutator.json"), slurp(rd[0] / "commutator.json"));
}
