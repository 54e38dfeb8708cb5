#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tilt/cli.hpp"
#include "tilt/error.hpp"

using namespace tilt;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "tilt");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("tilt_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST(Config, ParsesKeyValueWithComments) {
  RunConfig c;
  apply_config_text(c, "# comment\nfixture = ellipses\n\nsize=128  # trailing\nthreshold=0.08\nendpoints=stack\n");
  EXPECT_EQ(c.fixture, "ellipses");
  EXPECT_EQ(c.size, 128);
  EXPECT_DOUBLE_EQ(c.tilt.threshold, 0.08);
  EXPECT_EQ(c.tilt.endpoints, EndpointRule::stack);
}

TEST(Config, RejectsBadLines) {
  RunConfig c;
  EXPECT_THROW(apply_config_text(c, "size 128\n"), Error);
  EXPECT_THROW(apply_config_text(c, "colour=blue\n"), Error);
  EXPECT_THROW(apply_config_text(c, "size=12x\n"), Error);
  try {
    apply_config_text(c, "size=64\nnoise=lots\n", "run.cfg");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::config);
    EXPECT_NE(std::string(e.what()).find("run.cfg:2"), std::string::npos);
  }
}

TEST(Config, SettingsRoundTrip) {
  RunConfig c;
  c.tilt.level = 5;
  c.noise = 0.01;
  c.tilt.bar_rotation = BarRotation::literal;
  RunConfig d;
  for (auto& [k, v] : settings_of(c)) apply_setting(d, k, v);
  EXPECT_EQ(settings_of(d), settings_of(c));
  EXPECT_EQ(settings_of(c).size(), config_keys().size());
}

TEST(Cli, FlagsOverrideConfigFile) {
  fs::path dir = scratch("override");
  std::ofstream(dir / "run.cfg") << "fixture=blob\nsize=32\nlevel=5\nout=" << (dir / "a").string() << "\n";
  auto r = run({"phantom", "--config", (dir / "run.cfg").string(), "--size", "64"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto side = nlohmann::json::parse(slurp(dir / "a" / "phantom.pfm.json"));
  EXPECT_EQ(side["config"]["size"], 64);
  EXPECT_EQ(side["config"]["fixture"], "blob");
}

TEST(Cli, ErrorsAreJsonWithDistinctCodes) {
  fs::path dir = scratch("errors");
  auto bad_fixture = run({"phantom", "--fixture", "teapot", "--out", dir.string()});
  EXPECT_EQ(bad_fixture.code, int(ErrorCode::config));
  auto j = nlohmann::json::parse(bad_fixture.err);
  EXPECT_EQ(j["error"]["exit_code"], int(ErrorCode::config));
  EXPECT_EQ(j["error"]["code"], error_code_name(ErrorCode::config));

  EXPECT_EQ(run({"phantom", "--bogus", "1"}).code, int(ErrorCode::config));
  EXPECT_EQ(run({"recon", "--out", (dir / "nothing").string()}).code, int(ErrorCode::missing_input));

  fs::create_directories(dir / "broken");
  std::ofstream(dir / "broken" / "sinogram.raw") << "xx";
  std::ofstream(dir / "broken" / "sinogram.raw.json") << "{not json";
  EXPECT_EQ(run({"recon", "--out", (dir / "broken").string()}).code, int(ErrorCode::malformed_input));
}

TEST(Cli, SmallRunIsDeterministic) {
  fs::path dir = scratch("small");
  std::vector<std::string> args = {"all",     "--out",   dir.string(), "--size", "64", "--iters", "40",
                                   "--level", "5",       "--fixture",  "annulus"};
  auto first = run(args);
  ASSERT_EQ(first.code, 0) << first.err;
  for (auto f : {"phantom.pfm", "sinogram.raw", "recon.pfm", "report.json", "curves.json", "overlay.png", "masks.png"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  auto a = nlohmann::json::parse(slurp(dir / "report.json"));
  EXPECT_EQ(a["config"]["size"], 64);
  ASSERT_EQ(run(args).code, 0);
  auto b = nlohmann::json::parse(slurp(dir / "report.json"));
  a.erase("timings");
  b.erase("timings");
  EXPECT_EQ(a.dump(), b.dump());
}
