// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "leaky/cli/config.hpp"
#include "leaky/cli/output.hpp"
#include "leaky/cli/run.hpp"
#include "leaky/errors.hpp"

using namespace leaky;
using namespace leaky::cli;
namespace fs = std::filesystem;

namespace
{

const char *kBrassWater = R"(units: {length: mm, frequency: MHz}
layers:
  - {material: brass, thickness: 1.0, order: 7}
half_spaces: {bottom: water, top: water}
frequencies: {min: 0.5, max: 1.5, count: 3}
)";

class TempDir
{
public:
  TempDir()
  {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("leaky_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path path;
};

std::string Write(const fs::path &p, const std::string &text)
{
  std::ofstream(p) << text;
  return p.string();
}

std::string Read(const fs::path &p)
{
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> ParseCsv(const std::string &text)
{
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
  {
    std::vector<std::string> row;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ','))
    {
      row.push_back(cell);
    }
    if (!line.empty() && line.back() == ',')
    {
      row.push_back("");
    }
    rows.push_back(row);
  }
  return rows;
}

int RunWith(RunOptions o, std::string *out_text = nullptr, std::string *err_text = nullptr)
{
  std::ostringstream out, err;
  const int code = Run(o, out, err);
  if (out_text)
  {
    *out_text = out.str();
  }
  if (err_text)
  {
    *err_text = err.str();
  }
  return code;
}

std::string ConfigErrorOf(const std::string &text)
{
  try
  {
    ParseConfig(text, "c.yaml");
  }
  catch (const ConfigError &e)
  {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ParseConfig, UnitsAndDefaults)
{
  const auto c = ParseConfig(kBrassWater, "c.yaml");
  ASSERT_EQ(c.layers.size(), 1u);
  EXPECT_DOUBLE_EQ(c.layers[0].thickness, 1e-3);
  EXPECT_EQ(c.layers[0].order, 7);
  EXPECT_EQ(c.mode, DofMode::InPlane);
  const auto f = c.Frequencies();
  ASSERT_EQ(f.size(), 3u);
  EXPECT_DOUBLE_EQ(f[0], 0.5e6);
  EXPECT_DOUBLE_EQ(f[1], 1.0e6);
  EXPECT_DOUBLE_EQ(f[2], 1.5e6);
  EXPECT_EQ(c.Model(f.back()).half_spaces.size(), 2u);

  const auto m = ParseConfig(R"(units: {length: m, frequency: kHz, speed: km/s}
dof_mode: full
layers:
  - {material: {rho: 4460, c_l: 6.06, c_t: 3.23}, thickness: 0.002}
half_spaces: {bottom: {rho: 1000, c: 1.48}}
frequencies: {min: 100, max: 400, step: 100}
)",
                             "m.yaml");
  EXPECT_EQ(m.mode, DofMode::Full);
  EXPECT_DOUBLE_EQ(m.layers[0].thickness, 2e-3);
  EXPECT_DOUBLE_EQ(m.layers[0].c_l, 6060.0);
  EXPECT_DOUBLE_EQ(m.layers[0].c_t, 3230.0);
  EXPECT_EQ(m.Frequencies().size(), 4u);
  EXPECT_NEAR(m.Frequencies().back(), 4e5, 1e-6);
  // Order chosen from the highest frequency when not given.
  EXPECT_GE(m.Model(4e5).layers[0].order, 3);
  EXPECT_EQ(m.Model(4e5).half_spaces.size(), 1u);
}

TEST(ParseConfig, ErrorsCarryLineAndColumn)
{
  EXPECT_EQ(ConfigErrorOf("layers: []\n").rfind("c.yaml:1:9:", 0), 0u) << ConfigErrorOf("layers: []\n");
  const std::string unknown = std::string(kBrassWater) + "colour: red\n";
  EXPECT_EQ(ConfigErrorOf(unknown).rfind("c.yaml:6:1:", 0), 0u) << ConfigErrorOf(unknown);
  const std::string bad_material = R"(layers:
  - {material: unobtainium, thickness: 1}
frequencies: {min: 1, max: 2, count: 2}
)";
  EXPECT_EQ(ConfigErrorOf(bad_material).rfind("c.yaml:2:16:", 0), 0u) << ConfigErrorOf(bad_material);
  EXPECT_NE(ConfigErrorOf("a: [1, 2\n").find("c.yaml:"), std::string::npos);
}

TEST(ParseConfig, RejectsInvalidValues)
{
  const std::string layers = "layers:\n  - {material: brass, thickness: 1}\n";
  for (const std::string &bad : std::vector<std::string>
       {layers + "frequencies: {min: 2, max: 1, count: 3}\n", layers + "frequencies: {min: 1, max: 2}\n",
        layers + "frequencies: {min: 1, max: 2, count: 3, step: 0.5}\n",
        layers + "frequencies: {min: 0, max: 2, count: 3}\n",
        "layers:\n  - {material: water, thickness: 1}\nfrequencies: {min: 1, max: 2, count: 2}\n",
        "layers:\n  - {material: brass, thickness: -1}\nfrequencies: {min: 1, max: 2, count: 2}\n",
        layers + "dof_mode: sideways\nfrequencies: {min: 1, max: 2, count: 2}\n",
        layers + "units: {length: furlong}\nfrequencies: {min: 1, max: 2, count: 2}\n"})
  {
    EXPECT_NE(ConfigErrorOf(bad), "") << bad;
  }
}

TEST(Output, FormatDoubleRoundTrips)
{
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 4245.3950})
  {
    EXPECT_EQ(std::strtod(FormatDouble(x).c_str(), nullptr), x);
  }
}

class RunTest : public ::testing::Test
{
protected:
  void SetUp() override { config = Write(dir.path / "c.yaml", kBrassWater); }
  RunOptions Options(const std::string &sub) const
  {
    RunOptions o;
    o.config = config;
    o.out = (dir.path / sub).string();
    return o;
  }
  TempDir dir;
  std::string config;
};

TEST_F(RunTest, ValidateOnlyWritesNothing)
{
  auto o = Options("v");
  o.validate_only = true;
  std::string text;
  EXPECT_EQ(RunWith(o, &text), kExitOk);
  EXPECT_NE(text.find("brass"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir.path / "v"));
}

TEST_F(RunTest, ConfigErrorsExitWithTwo)
{
  auto o = Options("x");
  o.config = (dir.path / "missing.yaml").string();
  EXPECT_EQ(RunWith(o), kExitConfig);
  o.config = Write(dir.path / "bad.yaml", "layers: 3\n");
  std::string err;
  EXPECT_EQ(RunWith(o, nullptr, &err), kExitConfig);
  EXPECT_NE(err.find("bad.yaml:1:"), std::string::npos) << err;
  EXPECT_FALSE(fs::exists(dir.path / "x"));
}

TEST_F(RunTest, AllFrequenciesFailingExitsWithThree)
{
  auto o = Options("f");
  o.config = Write(dir.path / "f.yaml", R"(layers:
  - {material: brass, thickness: 1.0, order: 7}
half_spaces: {top: teflon}
frequencies: {min: 0.5, max: 1.0, count: 2}
solver: {max_size: 10}
)");
  EXPECT_EQ(RunWith(o), kExitAllFailed);
  const auto run = nlohmann::json::parse(Read(dir.path / "f" / "run.json"));
  EXPECT_EQ(run["failed_frequencies"], 2);
  EXPECT_TRUE(run["frequencies"][0].contains("error"));
}

TEST_F(RunTest, DispersionCsvMatchesSweepExactly)
{
  auto o = Options("a");
  ASSERT_EQ(RunWith(o), kExitOk);
  for (const char *f : {"dispersion.csv", "dispersion_cp.svg", "dispersion_att.svg", "run.json"})
  {
    EXPECT_TRUE(fs::exists(dir.path / "a" / f)) << f;
  }
  const auto rows = ParseCsv(Read(dir.path / "a" / "dispersion.csv"));
  ASSERT_GT(rows.size(), 1u);
  const auto &head = rows[0];
  EXPECT_EQ(head[0], "f_Hz");
  EXPECT_EQ(head[1], "re_k_rad_per_m");
  EXPECT_EQ(head[2], "im_k_np_per_m");
  EXPECT_EQ(std::find(head.begin(), head.end(), "characteristic_residual"), head.end());

  const auto cfg = LoadConfig(config);
  const auto results = DispersionSweep(cfg.Model(1.5e6), cfg.Frequencies(), cfg.options);
  std::vector<std::pair<double, complex>> expected;
  for (const auto &r : results)
  {
    for (const auto &m : r.modes)
    {
      expected.emplace_back(r.frequency, m.k);
    }
  }
  ASSERT_EQ(rows.size() - 1, expected.size());
  for (size_t i = 1; i < rows.size(); i++)
  {
    ASSERT_EQ(rows[i].size(), head.size());
    const double f = std::stod(rows[i][0]);
    const complex k(std::stod(rows[i][1]), std::stod(rows[i][2]));
    const bool found = std::any_of(expected.begin(), expected.end(), [&](const auto &e) {
      return e.first == f && e.second == k;
    });
    EXPECT_TRUE(found) << f << " " << k;
    const double cp = std::stod(rows[i][3]);
    EXPECT_NEAR(cp, 2.0 * std::numbers::pi * f / k.real(), 1e-9 * std::abs(cp));
    EXPECT_NEAR(std::stod(rows[i][4]), k.imag() * kDbPerNeper * 1e-3, 1e-12 + 1e-9 * std::abs(k.imag()));
  }
  for (size_t i = 2; i < rows.size(); i++)
  {
    EXPECT_LE(std::stod(rows[i - 1][0]), std::stod(rows[i][0]));
  }
}

TEST_F(RunTest, OutputIsDeterministicAcrossThreadCounts)
{
  auto a = Options("a"), b = Options("b");
  b.threads = 3;
  ASSERT_EQ(RunWith(a), kExitOk);
  ASSERT_EQ(RunWith(b), kExitOk);
  EXPECT_EQ(Read(dir.path / "a" / "dispersion.csv"), Read(dir.path / "b" / "dispersion.csv"));
  EXPECT_EQ(Read(dir.path / "a" / "dispersion_cp.svg"), Read(dir.path / "b" / "dispersion_cp.svg"));
}

TEST_F(RunTest, OracleColumnAndModeShapes)
{
  auto o = Options("o");
  o.oracle = true;
  o.freq = {1.0};
  o.modes_at = {1.0};
  ASSERT_EQ(RunWith(o), kExitOk);
  const auto rows = ParseCsv(Read(dir.path / "o" / "dispersion.csv"));
  const auto &head = rows[0];
  const auto col = std::find(head.begin(), head.end(), "characteristic_residual") - head.begin();
  ASSERT_LT(col, static_cast<long>(head.size()));
  const auto cls = std::find(head.begin(), head.end(), "class") - head.begin();
  int checked = 0;
  for (size_t i = 1; i < rows.size(); i++)
  {
    EXPECT_EQ(std::stod(rows[i][0]), 1e6);
    if (rows[i][cls] == "outgoing" || rows[i][cls] == "trapped")
    {
      EXPECT_LT(std::stod(rows[i][col]), 1e-4) << i;
      checked++;
    }
  }
  EXPECT_GT(checked, 0);

  const auto run = nlohmann::json::parse(Read(dir.path / "o" / "run.json"));
  for (const char *key : {"config", "config_text", "versions", "frequencies", "mode_shapes"})
  {
    EXPECT_TRUE(run.contains(key)) << key;
  }
  EXPECT_EQ(run["frequencies"].size(), 1u);
  ASSERT_GT(run["mode_shapes"].size(), 0u);
  for (const auto &s : run["mode_shapes"])
  {
    const auto shape = ParseCsv(Read(dir.path / "o" / s["file"].get<std::string>()));
    ASSERT_GT(shape.size(), 10u);
    EXPECT_EQ(shape[0][0], "y_m");
    EXPECT_EQ(shape[0][1], "region");
    EXPECT_GT(s["re_k"].get<double>(), 0.0);
  }
}

TEST_F(RunTest, OracleOnMultilayerWarnsAndSkips)
{
  auto o = Options("m");
  o.config = Write(dir.path / "m.yaml", R"(layers:
  - {material: titanium, thickness: 1.0, order: 5}
  - {material: brass, thickness: 1.0, order: 5}
frequencies: {min: 0.5, max: 1.0, count: 2}
)");
  o.oracle = true;
  std::string err;
  ASSERT_EQ(RunWith(o, nullptr, &err), kExitOk);
  EXPECT_NE(err.find("warning"), std::string::npos);
  const auto rows = ParseCsv(Read(dir.path / "m" / "dispersion.csv"));
  EXPECT_EQ(std::find(rows[0].begin(), rows[0].end(), "characteristic_residual"), rows[0].end());
}

TEST(Executable, ExitCodes)
{
  TempDir dir;
  const std::string exe = LEAKY_EXE;
  const auto code = [&](const std::string &args) {
    const int s = std::system((exe + " " + args + " > " + (dir.path / "log").string() + " 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(code("--help"), 0);
  EXPECT_EQ(code("run"), kExitUsage);
  EXPECT_EQ(code("run x.yaml --threads notanumber"), kExitUsage);
  EXPECT_EQ(code("run " + (dir.path / "missing.yaml").string()), kExitConfig);
  for (const char *name : {"brass_water", "brass_teflon", "titanium_teflon_brass", "trilayer_teflon_oil"})
  {
    EXPECT_EQ(code(std::string("run --validate-only ") + LEAKY_CONFIG_DIR + "/" + name + ".yaml"), 0) << name;
  }
  const std::string cfg = Write(dir.path / "c.yaml", kBrassWater);
  const std::string out = (dir.path / "out").string();
  EXPECT_EQ(code("run " + cfg + " --freq 0.8,1.2 --out " + out + " --seed 7"), 0);
  const auto rows = ParseCsv(Read(fs::path(out) / "dispersion.csv"));
  ASSERT_GT(rows.size(), 1u);
  EXPECT_EQ(std::stod(rows[1][0]), 0.8e6);
  EXPECT_EQ(std::stod(rows.back()[0]), 1.2e6);
}
