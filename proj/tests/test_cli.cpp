#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "app.hpp"

using namespace shellres;

namespace {

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::size_t lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(app::exit_code(ErrorCode::ConfigError), 2);
  EXPECT_EQ(app::exit_code(ErrorCode::OrderedRadii), 2);
  EXPECT_EQ(app::exit_code(ErrorCode::EnclosedPoleMismatch), 2);
  EXPECT_EQ(app::exit_code(ErrorCode::NonConvergence), 3);
  EXPECT_EQ(app::exit_code(ErrorCode::BoundaryZero), 3);
}

TEST(Cli, NumbersRoundTrip) {
  for (double x : {0.1, -2.3190998502052733, 1e-300, 6.02214076e23}) EXPECT_EQ(std::stod(app::num(x)), x);
}

TEST(Cli, Modes) {
  EXPECT_EQ(app::parse_mode("in-in"), ExpansionMode::in_in);
  EXPECT_EQ(app::parse_mode("out-out"), ExpansionMode::out_out);
  EXPECT_EQ(app::parse_mode("out-in"), ExpansionMode::out_in);
  EXPECT_THROW(app::parse_mode("in-out"), Error);
}

TEST(Cli, SmatrixTable) {
  std::ostringstream out;
  app::smatrix_csv(out, make_potential(10, 1, 2), {0.5, 5.0, 50});
  const std::string text = out.str();
  EXPECT_EQ(first_line(text), "k,re_s,im_s,abs_s,phase");
  EXPECT_EQ(lines(text), 51u);
  std::ostringstream bad;
  EXPECT_THROW(app::smatrix_csv(bad, make_potential(10, 1, 2), {1.0, 0.5, 10}), Error);
}

TEST(Cli, PoleTables) {
  const PotentialSpec pot = make_potential(10, 1, 2);
  const auto poles = find_resonances(SearchRegion{}, pot);
  std::ostringstream a, b;
  app::poles_csv(a, poles);
  app::antiresonances_csv(b, poles, pot);
  EXPECT_EQ(first_line(a.str()), "n,re_k,im_k,re_z,im_z,energy,gamma,re_n_sq,im_n_sq,newton_error");
  EXPECT_EQ(lines(a.str()), poles.size() + 1);
  EXPECT_EQ(lines(b.str()), poles.size() + 1);
  EXPECT_NE(a.str().find("2.3190998502052"), std::string::npos);
}

TEST(Cli, GamowTable) {
  const PotentialSpec pot = make_potential(10, 1, 2);
  const auto poles = find_resonances(SearchRegion{}, pot);
  std::ostringstream out;
  app::GamowArgs args;
  args.n = 10;
  app::gamow_csv(out, gamow_state(poles.front(), pot), pot, args);
  EXPECT_EQ(first_line(out.str()), "r,re_u,im_u,abs_u");
  EXPECT_EQ(lines(out.str()), 12u);
}

TEST(Cli, ExpansionReportIsDeterministicWithoutTimestamp) {
  RunConfig cfg;
  app::ExpandArgs args;
  args.alphas = {0.1};
  const app::Output quiet{".", false};
  std::string first;
  for (int run = 0; run < 2; ++run) {
    const auto [report, relative] = app::run_expansion(cfg, args);
    EXPECT_LE(relative, cfg.tolerance("expansion"));
    std::ostringstream text;
    app::expansion_text(text, quiet, cfg, args, report, relative);
    EXPECT_EQ(text.str().find("generated"), std::string::npos);
    if (run == 0) first = text.str();
    else EXPECT_EQ(text.str(), first);
  }
  EXPECT_NE(first.find("[pole.4]"), std::string::npos);
  EXPECT_EQ(first.find("[pole.5]"), std::string::npos);
}

TEST(Cli, VerificationTable) {
  std::vector<Check> rows{make_check("a", "p", 1e-12, 1e-10), make_check("b", "p", 5.0, 1e2, true),
                          skipped_check("c", "p", "nothing to do")};
  std::ostringstream out;
  EXPECT_FALSE(app::print_verification(out, rows));
  EXPECT_NE(out.str().find("pass"), std::string::npos);
  EXPECT_NE(out.str().find("FAIL"), std::string::npos);
  EXPECT_NE(out.str().find("skip"), std::string::npos);
  rows.erase(rows.begin() + 1);
  std::ostringstream ok;
  EXPECT_TRUE(app::print_verification(ok, rows));
}
