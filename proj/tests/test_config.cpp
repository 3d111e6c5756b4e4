#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "shellres/config.hpp"

using namespace shellres;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "cfg");
}

std::string failure(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
    return e.what();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return {};
}

}  // namespace

TEST(Config, EmptyKeepsDefaults) {
  const RunConfig cfg = parse("");
  EXPECT_EQ(cfg.potential.v0, 10.0);
  EXPECT_EQ(cfg.potential.a, 1.0);
  EXPECT_EQ(cfg.potential.b, 2.0);
  EXPECT_EQ(cfg.potential.scale, 1.0);
  EXPECT_EQ(cfg.search.re_max, 8.0);
  EXPECT_EQ(cfg.contour.poles, 4u);
  EXPECT_EQ(cfg.tolerance("completeness"), 1e-4);
  EXPECT_THROW(cfg.tolerance("nonsense"), Error);
}

TEST(Config, ReadsEverySection) {
  const RunConfig cfg = parse(
      "; comment\n"
      "[potential]\nv0 = 12.5\na = 0.5\nb = 1.5\n"
      "[units]\nscale = 2\n"
      "[search]\nre_min = 0\nre_max = 6\nim_min = -2\nim_max = 0\ntol = 1e-11\n"
      "[contour]\ndepth = 1.2\nkmax = 30\ndensity = 48\nnodes = 3000\npoles = 0\n"
      "[test_function]\ncenter = 0.4\nwidth = 0.1\nsupport = 1.2\n"
      "[output]\ndir = results\n"
      "[tolerances]\ncompleteness = 2e-4\n");
  EXPECT_EQ(cfg.potential.v0, 12.5);
  EXPECT_EQ(cfg.potential.a, 0.5);
  EXPECT_EQ(cfg.potential.b, 1.5);
  EXPECT_EQ(cfg.potential.scale, 2.0);
  EXPECT_EQ(cfg.search.re_max, 6.0);
  EXPECT_EQ(cfg.search.im_min, -2.0);
  EXPECT_EQ(cfg.newton_tol, 1e-11);
  EXPECT_EQ(cfg.contour.depth, 1.2);
  EXPECT_EQ(cfg.contour.k_max, 30.0);
  EXPECT_EQ(cfg.contour.density, 48.0);
  EXPECT_EQ(cfg.contour.real_axis_nodes, 3000u);
  EXPECT_EQ(cfg.contour.poles, 0u);
  EXPECT_EQ(cfg.bump.center, 0.4);
  EXPECT_EQ(cfg.bump.width, 0.1);
  EXPECT_EQ(cfg.bump.support, 1.2);
  EXPECT_EQ(cfg.output_dir, "results");
  EXPECT_EQ(cfg.tolerance("completeness"), 2e-4);
  EXPECT_EQ(cfg.tolerance("unitarity"), 1e-10);
}

TEST(Config, UnknownKeyNamesItsLine) {
  EXPECT_NE(failure("[potential]\nv0 = 1\n\nfoo = 2\n").find("cfg:4: unknown key 'potential.foo'"), std::string::npos);
  EXPECT_NE(failure("[tolerances]\nbogus = 1\n").find("cfg:2: unknown key 'tolerances.bogus'"), std::string::npos);
}

TEST(Config, UnknownSectionNamesItsLine) {
  EXPECT_NE(failure("[potential]\nv0 = 1\n[extras]\n").find("cfg:3: unknown section [extras]"), std::string::npos);
}

TEST(Config, BadValuesNameTheirLine) {
  EXPECT_NE(failure("[potential]\nv0 = ten\n").find("cfg:2:"), std::string::npos);
  EXPECT_NE(failure("[potential]\nv0 = 1 2\n").find("cfg:2:"), std::string::npos);
  EXPECT_NE(failure("[contour]\n\nnodes = 2.5\n").find("cfg:3:"), std::string::npos);
  EXPECT_NE(failure("[contour]\nnodes = 0\n").find("cfg:2:"), std::string::npos);
  EXPECT_NE(failure("[potential]\nv0 = inf\n").find("finite"), std::string::npos);
}

TEST(Config, KeyOutsideSection) { EXPECT_NE(failure("v0 = 3\n").find("outside any section"), std::string::npos); }

TEST(Config, SyntaxErrorNamesItsLine) {
  EXPECT_NE(failure("[potential]\nv0 = 1\nnot a pair\n").find("cfg:3:"), std::string::npos);
}

TEST(Config, ModelValidationIsAConfigError) {
  EXPECT_NE(failure("[potential]\na = 3\nb = 2\n").find("OrderedRadii"), std::string::npos);
  EXPECT_NE(failure("[search]\nre_min = 5\nre_max = 1\n").find("cfg"), std::string::npos);
}

TEST(Config, MissingFile) {
  try {
    load_config("/nonexistent/shellres.ini");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
  }
}
