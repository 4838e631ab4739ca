#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "json.hpp"
#include "unruh/commands.hpp"
#include "unruh/config.hpp"

using namespace unruh;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("unruh_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(UNRUH_SIM_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Config, Presets) {
  const auto f = preset("fig1-laser");
  EXPECT_EQ(f.field.gamma, 300.0);
  EXPECT_EQ(f.field.intensity_lab_W_cm2, 1e18);
  EXPECT_EQ(f.field.photon_energy_lab_eV, 2.5);
  EXPECT_EQ(f.field.envelope_halfwidth_cycles, 100.0);
  const auto u = preset("undulator-fel");
  EXPECT_EQ(u.n_electrons, 6e9);
  EXPECT_EQ(u.field.gamma, 4000.0);
  EXPECT_EQ(u.field.K_factor, 0.9);
  EXPECT_EQ(u.bunching, 0.01);
  EXPECT_THROW(preset("nope"), ParseError);
}

TEST(Config, MissingVersion) {
  try {
    parse_config_text("");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(std::string(e.what()), "missing version");
  }
  EXPECT_THROW(parse_config_text("field.gamma = 3\n"), ParseError);
  EXPECT_THROW(parse_config_text("version = 2\n"), ParseError);
}

TEST(Config, UnknownKeyReportsLineAndKey) {
  try {
    parse_config_text("version = 1\n# comment\n\nfield.gamma = 10\nfield.gama = 3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5);
    EXPECT_EQ(e.key(), "field.gama");
  }
}

TEST(Config, ValueErrors) {
  auto expect_err = [](const std::string& text, const std::string& key, int line) {
    try {
      parse_config_text(text);
      ADD_FAILURE() << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.key(), key) << text;
      EXPECT_EQ(e.line(), line) << text;
    }
  };
  expect_err("version = 1\nfield.gamma = 0.5\n", "field.gamma", 2);
  expect_err("version = 1\nfield.gamma = abc\n", "field.gamma", 2);
  expect_err("version = 1\nmap.n_theta = 4\n", "map.n_theta", 2);
  expect_err("version = 1\nfield.kind = maser\n", "field.kind", 2);
  expect_err("version = 1\nbeam.coherent = maybe\n", "beam.coherent", 2);
  expect_err("version = 1\nrun.workers = 1\nrun.workers = 2\n", "run.workers", 3);
  expect_err("version = 1\njunk line\n", "junk line", 2);
}

TEST(Config, ParsesValuesAndComments) {
  const auto c = parse_config_text(
      "version = 1   # trailing\nscenario.preset = undulator-fel\nfield.gamma = 5000\n"
      "map.n_energy = 64\nbeam.coherent = false\n");
  EXPECT_EQ(c.name, "undulator-fel");
  EXPECT_EQ(c.field.gamma, 5000.0);
  EXPECT_EQ(c.field.kind, FieldKind::undulator);
  EXPECT_EQ(c.map_n_energy, 64u);
  EXPECT_FALSE(c.coherent);
  EXPECT_THROW(parse_config_text("version = 1\nfield.gamma = 3\nscenario.preset = fig1-laser\n"),
               ParseError);
}

TEST(Config, EnvironmentOverride) {
  EXPECT_EQ(detail::env_name("field.gamma"), "UNRUH_FIELD__GAMMA");
  std::map<std::string, std::string> env{{"UNRUH_FIELD__GAMMA", "450"}, {"UNRUH_RUN__WORKERS", "3"}};
  auto c = parse_config_text("version = 1\n");
  apply_env_overrides(c, [&](const char* n) -> const char* {
    auto it = env.find(n);
    return it == env.end() ? nullptr : it->second.c_str();
  });
  EXPECT_EQ(c.field.gamma, 450.0);
  EXPECT_EQ(c.workers, 3u);
  env["UNRUH_FIELD__GAMMA"] = "-1";
  EXPECT_THROW(apply_env_overrides(c, [&](const char* n) -> const char* {
                 auto it = env.find(n);
                 return it == env.end() ? nullptr : it->second.c_str();
               }),
               ParseError);
}

TEST(Config, HashIgnoresWorkersAndOutput) {
  auto a = preset("fig1-laser");
  auto b = a;
  b.workers = 8;
  b.output_dir = "elsewhere";
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.field.gamma = 301.0;
  EXPECT_NE(config_hash(a), config_hash(b));
  // The echo is itself a valid config that reproduces the hash.
  EXPECT_EQ(config_hash(parse_config_text(echo_config(a))), config_hash(a));
}

TEST(Config, Fnv1a) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Cli, UnknownFlagFailsWithUsage) {
  const auto dir = scratch("flag");
  write(dir / "c.conf", "version = 1\n");
  EXPECT_NE(run_cli("validate --config " + (dir / "c.conf").string() + " --bogus", dir / "log"), 0);
  EXPECT_NE(slurp(dir / "log").find("Usage"), std::string::npos);
  EXPECT_NE(run_cli("explode --config " + (dir / "c.conf").string(), dir / "log"), 0);
}

TEST(Cli, ValidateZeroField) {
  const auto dir = scratch("zero");
  write(dir / "c.conf", "version = 1\nfield.intensity_w_cm2 = 0\n");
  EXPECT_EQ(run_cli("validate --config " + (dir / "c.conf").string() + " --out " +
                        (dir / "out").string(),
                    dir / "log"),
            0);
  const std::string csv = slurp(dir / "out" / "validity.csv");
  EXPECT_EQ(csv.find("marginal"), std::string::npos);
  EXPECT_EQ(csv.find("violated"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "out" / "manifest.json"));
}

TEST(Cli, ValidateViolatedExitsTwo) {
  const auto dir = scratch("hot");
  write(dir / "c.conf", "version = 1\nfield.intensity_w_cm2 = 1e20\n");
  EXPECT_EQ(run_cli("validate --config " + (dir / "c.conf").string() + " --out " +
                        (dir / "out").string(),
                    dir / "log"),
            2);
}

TEST(Cli, BadConfigExitsTwo) {
  const auto dir = scratch("bad");
  write(dir / "c.conf", "version = 1\nfield.nope = 1\n");
  EXPECT_EQ(run_cli("estimate --config " + (dir / "c.conf").string(), dir / "log"), 2);
  EXPECT_NE(slurp(dir / "log").find(":2:"), std::string::npos);
}

TEST(Cli, EstimateWritesReportAndManifest) {
  const auto dir = scratch("est");
  write(dir / "c.conf", "version = 1\n");
  ASSERT_EQ(run_cli("estimate --preset fig1-laser --config " + (dir / "c.conf").string() +
                        " --out " + (dir / "out").string(),
                    dir / "log"),
            0);
  const std::string txt = slurp(dir / "out" / "estimate.txt");
  EXPECT_NE(txt.find("p_unruh"), std::string::npos);
  EXPECT_NE(txt.find("p_larmor"), std::string::npos);
  EXPECT_NE(txt.find("ratio"), std::string::npos);
  const auto man = nlohmann::json::parse(slurp(dir / "out" / "manifest.json"));
  EXPECT_EQ(man["command"], "estimate");
  EXPECT_EQ(man["files"].size(), 2u);
  const std::string csv = slurp(dir / "out" / "estimate.csv");
  EXPECT_EQ(man["files"][1]["fnv1a64"], hex64(fnv1a64(csv)));
  EXPECT_EQ(csv.rfind("# tool: unruh_sim", 0), 0u);
}

TEST(Cli, DeterministicAcrossWorkers) {
  const auto dir = scratch("det");
  write(dir / "c.conf",
        "version = 1\nfield.halfwidth_cycles = 2\nspectrum.n_k = 21\n");
  ASSERT_EQ(run_cli("larmor-spectrum --config " + (dir / "c.conf").string() + " --workers 1 --out " +
                        (dir / "a").string(),
                    dir / "log"),
            0);
  ASSERT_EQ(run_cli("larmor-spectrum --config " + (dir / "c.conf").string() + " --workers 3 --out " +
                        (dir / "b").string(),
                    dir / "log"),
            0);
  EXPECT_EQ(slurp(dir / "a" / "larmor_spectrum.csv"), slurp(dir / "b" / "larmor_spectrum.csv"));
}

TEST(Cli, FailureRemovesPartialOutputs) {
  const auto dir = scratch("partial");
  fs::create_directories(dir / "out" / "manifest.json");  // blocks the manifest write
  ScenarioConfig c = preset("fig1-laser");
  c.output_dir = (dir / "out").string();
  std::ostringstream log, err;
  EXPECT_EQ(run_command("estimate", c, log, err), kExitCompute);
  EXPECT_FALSE(fs::exists(dir / "out" / "estimate.txt"));
  EXPECT_FALSE(fs::exists(dir / "out" / "estimate.csv"));
}
