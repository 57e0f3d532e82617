#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "boundarylab/classifier_registry.hpp"
#include "boundarylab/config.hpp"
#include "boundarylab/filterbank.hpp"
#include "doctest.h"

using namespace boundarylab;

namespace {

std::string write_temp_config(const std::string& name, const std::string& body) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "boundarylab_config_test";
  fs::create_directories(dir);
  fs::path file = dir / name;
  std::ofstream out(file);
  out << body;
  return file.string();
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("config file parsing") {
  std::string path = write_temp_config("ok.ini",
                                       "# global knobs\n"
                                       "seed = 7\n"
                                       "threads = 2\n"
                                       "\n"
                                       "[raster]\n"
                                       "width = 128   ; trailing comment\n"
                                       "height=128\n"
                                       "[stability]\n"
                                       "samples = 500\n");
  SectionMap config = parse_config_file(path);
  CHECK(config[""]["seed"] == "7");
  CHECK(config[""]["threads"] == "2");
  CHECK(config["raster"]["width"] == "128");
  CHECK(config["raster"]["height"] == "128");
  CHECK(config["stability"]["samples"] == "500");
}

TEST_CASE("unknown sections and keys are rejected with names") {
  std::string bad_section = write_temp_config("s.ini", "[rasterize]\nwidth=2\n");
  try {
    parse_config_file(bad_section);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("rasterize") != std::string::npos);
  }

  std::string bad_key = write_temp_config("k.ini", "[raster]\nwidht=2\n");
  try {
    parse_config_file(bad_key);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("widht") != std::string::npos);
  }

  // Sections other than the one being run are still validated.
  std::string bad_other = write_temp_config("o.ini",
                                            "[raster]\nwidth=64\n"
                                            "[attack]\nbudget=5\n");
  CHECK_THROWS_AS(parse_config_file(bad_other), ConfigError);

  std::string bad_top = write_temp_config("t.ini", "verbosity=3\n");
  CHECK_THROWS_AS(parse_config_file(bad_top), ConfigError);

  std::string bad_syntax = write_temp_config("y.ini", "[raster]\nwidth\n");
  CHECK_THROWS_AS(parse_config_file(bad_syntax), ConfigError);
}

TEST_CASE("missing config file maps to an io failure") {
  CHECK_THROWS(parse_config_file("/nonexistent/boundarylab.ini"));
}

TEST_CASE("schema defaults cover every subcommand") {
  for (const auto& name : subcommand_names()) {
    const auto& schema = subcommand_schema(name);
    CHECK(!schema.empty());
    RunConfig run = resolve_run(name, {}, {}, "", "", "", false);
    CHECK(run.subcommand == name);
    CHECK(run.seed == 42);
    CHECK(run.threads >= 1);
    CHECK(run.output_dir == "out");
    CHECK_FALSE(run.check);
    for (const auto& [key, value] : schema) CHECK(run.params.at(key) == value);
  }
  CHECK_THROWS_AS(subcommand_schema("rasterize"), ConfigError);
}

TEST_CASE("later layers override earlier ones") {
  SectionMap file;
  file[""]["seed"] = "10";
  file[""]["out"] = "file_out";
  file["raster"]["width"] = "100";
  file["raster"]["height"] = "90";

  RunConfig from_file = resolve_run("raster", file, {}, "", "", "", false);
  CHECK(from_file.seed == 10);
  CHECK(from_file.output_dir == "file_out");
  CHECK(from_file.params.at("width") == "100");
  CHECK(from_file.params.at("height") == "90");
  CHECK(from_file.params.at("neighborhood") == "8");  // untouched default

  RunConfig with_kv = resolve_run("raster", file, {"width=200"}, "", "", "", false);
  CHECK(with_kv.params.at("width") == "200");
  CHECK(with_kv.params.at("height") == "90");

  RunConfig with_flags =
      resolve_run("raster", file, {"width=200"}, "99", "1", "flag_out", true);
  CHECK(with_flags.seed == 99);
  CHECK(with_flags.threads == 1);
  CHECK(with_flags.output_dir == "flag_out");
  CHECK(with_flags.check);
}

TEST_CASE("key value arguments are validated") {
  CHECK_THROWS_AS(resolve_run("raster", {}, {"widht=5"}, "", "", "", false), ConfigError);
  CHECK_THROWS_AS(resolve_run("raster", {}, {"width"}, "", "", "", false), ConfigError);
  CHECK_THROWS_AS(resolve_run("nosuch", {}, {}, "", "", "", false), ConfigError);
  CHECK_THROWS_AS(resolve_run("raster", {}, {}, "-3", "", "", false), ConfigError);
  CHECK_THROWS_AS(resolve_run("raster", {}, {}, "", "0", "", false), ConfigError);
  CHECK_THROWS_AS(resolve_run("raster", {}, {}, "", "-2", "", false), ConfigError);
}

TEST_CASE("bare mitigation token selects the bound kind") {
  RunConfig run = resolve_run("bound", {}, {"mitigation"}, "", "", "", false);
  CHECK(run.params.at("kind") == "mitigation");
  CHECK_THROWS_AS(resolve_run("bound", {}, {"curve_thing"}, "", "", "", false),
                  ConfigError);
  CHECK_THROWS_AS(resolve_run("raster", {}, {"mitigation"}, "", "", "", false),
                  ConfigError);
}

TEST_CASE("threads auto resolves to at least one worker") {
  RunConfig run = resolve_run("raster", {}, {}, "", "auto", "", false);
  CHECK(run.threads >= 1);
  SectionMap file;
  file[""]["threads"] = "3";
  CHECK(resolve_run("raster", file, {}, "", "", "", false).threads == 3);
}

TEST_CASE("numeric parsers") {
  CHECK(parse_u64("42", "k") == 42);
  CHECK_THROWS_AS(parse_u64("-1", "k"), ConfigError);
  CHECK_THROWS_AS(parse_u64("4.5", "k"), ConfigError);
  CHECK_THROWS_AS(parse_u64("", "k"), ConfigError);
  CHECK_THROWS_AS(parse_u64("12abc", "k"), ConfigError);

  CHECK(parse_i64("-7", "k") == -7);
  CHECK(parse_real("0.25", "k") == 0.25);
  CHECK_THROWS_AS(parse_real("zero", "k"), ConfigError);

  CHECK(parse_bool("1", "k"));
  CHECK(parse_bool("true", "k"));
  CHECK_FALSE(parse_bool("0", "k"));
  CHECK_FALSE(parse_bool("false", "k"));
  CHECK_THROWS_AS(parse_bool("yes", "k"), ConfigError);
}

TEST_CASE("integer list parser handles ranges and lists") {
  auto range = parse_int_list("4..8", "m");
  CHECK(range == std::vector<std::int64_t>({4, 5, 6, 7, 8}));
  auto list = parse_int_list("4,8,16", "m");
  CHECK(list == std::vector<std::int64_t>({4, 8, 16}));
  auto single = parse_int_list("9", "m");
  CHECK(single == std::vector<std::int64_t>({9}));
  CHECK_THROWS_AS(parse_int_list("8..4", "m"), ConfigError);
  CHECK_THROWS_AS(parse_int_list("1..9999999", "m"), ConfigError);
  CHECK_THROWS_AS(parse_int_list("a..b", "m"), ConfigError);
  CHECK_THROWS_AS(parse_int_list("", "m"), ConfigError);

  auto reals = parse_real_list("0,0,1,1", "extent");
  CHECK(reals == std::vector<double>({0.0, 0.0, 1.0, 1.0}));
  CHECK_THROWS_AS(parse_real_list("0,,1", "extent"), ConfigError);
}

TEST_CASE("classifier registry specs") {
  auto threshold = make_classifier("threshold1d");
  CHECK(threshold->dim() == 1);
  CHECK(threshold->label_count() == 2);
  CHECK(threshold->evaluate(Point({0.7})).index == 1);
  CHECK(threshold->evaluate(Point({0.3})).index == 0);

  auto halfplane = make_classifier("halfplane2d");
  CHECK(halfplane->dim() == 2);
  CHECK(halfplane->evaluate(Point({0.7, 0.1})).index == 1);
  CHECK(halfplane->evaluate(Point({0.3, 0.9})).index == 0);

  auto mean = make_classifier("mean:4");
  CHECK(mean->dim() == 4);
  CHECK(mean->evaluate(Point({0.9, 0.9, 0.9, 0.9})).index == 1);
  CHECK(mean->evaluate(Point({0.1, 0.1, 0.1, 0.9})).index == 0);

  auto constant = make_classifier("constant:2");
  CHECK(constant->dim() == 2);
  CHECK(constant->label_count() == 2);
  CHECK(constant->evaluate(Point({0.99, 0.99})).index == 0);

  auto bank = make_classifier("paper_filter_bank");
  CHECK(bank->dim() == 2);
  CHECK(bank->label_count() == 4);
  CHECK(bank->evaluate(Point({0.5, 0.5})).index == 0);

  auto dot = make_classifier("paper_filter_bank:dot");
  CHECK(dot->evaluate(Point({1.0, 0.0})).index == 1);

  auto linear = make_classifier("linear:1,0:-0.5:identity");
  for (double x : {0.1, 0.4, 0.6, 0.9}) {
    Point p({x, 0.5});
    CHECK(linear->evaluate(p).index == halfplane->evaluate(p).index);
  }
}

TEST_CASE("registry rejects malformed specs by name") {
  for (const std::string& spec :
       {std::string("nosuch"), std::string("mean:"), std::string("mean:0"),
        std::string("constant:x"), std::string("linear:1,0:-0.5"),
        std::string("linear:1,0:-0.5:relu"), std::string("paper_filter_bank:l2")}) {
    try {
      make_classifier(spec);
      FAIL("expected invalid_argument for " << spec);
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find(spec.substr(0, spec.find(':'))) !=
            std::string::npos);
    }
  }
}

TEST_CASE("feature registry") {
  auto smooth = make_feature("smooth0");
  CHECK(smooth.first == "smooth0");
  CHECK(smooth.second(Point({0.75})) == 0.5);
  CHECK(smooth.second(Point({0.5})) == 0.0);

  auto sign = make_feature("sign0");
  CHECK(sign.second(Point({0.75})) == 1.0);
  CHECK(sign.second(Point({0.25})) == -1.0);
  CHECK(sign.second(Point({0.5})) == 0.0);

  auto zero = make_feature("zero");
  CHECK(zero.second(Point({0.9})) == 0.0);

  auto coord = make_feature("coord:1");
  CHECK(coord.second(Point({0.2, 0.8})) == 0.8);

  CHECK_THROWS_AS(make_feature("nosuch"), std::invalid_argument);
  CHECK_THROWS_AS(make_feature("coord:-1"), std::invalid_argument);
  CHECK_THROWS_AS(make_feature("coord:x"), std::invalid_argument);
}

}  // TEST_SUITE
