#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shellres/poles.hpp"

using namespace shellres;

namespace {

const PotentialSpec kRef = make_potential(10, 1, 2, 1);
const PotentialSpec kFree = make_potential(0, 1, 2, 1);

}  // namespace

TEST(CountZeros, TrivialRegions) {
  EXPECT_EQ(count_zeros({0, 8, -3, 0}, kFree), 0);
  EXPECT_EQ(count_zeros({-8, 8, 0.01, 5}, kRef), 0);
  EXPECT_THROW(count_zeros({1, 0, -1, 0}, kRef), Error);
}

TEST(CountZeros, MatchesBruteForceScan) {
  const SearchRegion region{0, 6, -2, 0};
  const auto scan = oracle::grid_minima([](cplx z) { return std::abs(jost_plus(WaveNumber(z), kRef)); }, 0, 6, -2, 0,
                                        400, 1e-9);
  const auto poles = find_resonances(region, kRef);
  EXPECT_EQ(count_zeros(region, kRef), static_cast<int>(scan.size()));
  ASSERT_EQ(poles.size(), scan.size());
  for (std::size_t i = 0; i < poles.size(); ++i) EXPECT_LT(std::abs(poles[i].k.q - scan[i]), 1e-8) << i;
}

TEST(CountZeros, PoleOnBoundaryIsHandled) {
  const auto poles = find_resonances({0, 3, -1, 0}, kRef);
  ASSERT_EQ(poles.size(), 1u);
  const double im = poles[0].k.im();
  int n = -1;
  EXPECT_NO_THROW(n = count_zeros({0, 3, im, 0}, kRef));
  EXPECT_TRUE(n == 0 || n == 1);
}

TEST(FindResonances, FreeHasNone) { EXPECT_TRUE(find_resonances({0, 8, -3, 0}, kFree).empty()); }

TEST(FindResonances, ReferenceInvariants) {
  const auto poles = find_resonances({0, 8, -3, 0}, kRef);
  ASSERT_EQ(poles.size(), 4u);
  EXPECT_NEAR(poles[0].k.re(), 2.319099850205, 1e-10);
  EXPECT_NEAR(poles[0].k.im(), -0.009303105481, 1e-10);
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const auto& p = poles[i];
    if (i) EXPECT_LT(poles[i - 1].k.re(), p.k.re());
    EXPECT_GT(p.k.re(), 0.0);
    EXPECT_LT(p.k.im(), 0.0);
    const JostCoeffs c = match_coeffs(p.k, kRef);
    EXPECT_LE(std::abs(c.jplus), 1e-10 * std::abs(c.jminus));
    const auto [f, df] = jost_plus_with_derivative(p.k, kRef);
    EXPECT_GT(std::abs(df), 1e-10);
    EXPECT_LE(std::abs(f), 1e-12 * std::max(1.0, std::abs(df)));
    EXPECT_EQ(p.n_sq, I * p.residue_s);
    EXPECT_GT(p.width(), 0.0);
    EXPECT_LT(p.z.z.imag(), 0.0);
    EXPECT_EQ(p.z.sheet, Sheet::second);
    EXPECT_EQ(p.z.z, cplx(p.energy(), -0.5 * p.width()));
  }
}

TEST(FindResonances, Deterministic) {
  const auto a = find_resonances({0, 8, -3, 0}, kRef);
  const auto b = find_resonances({0, 8, -3, 0}, kRef);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].k, b[i].k);
    EXPECT_EQ(a[i].n_sq, b[i].n_sq);
  }
}

TEST(FindResonances, SearchIsComplete) {
  const SearchRegion wide{0, 20, -3, 0};
  EXPECT_EQ(static_cast<int>(find_resonances(wide, kRef).size()), count_zeros(wide, kRef));
}

TEST(FindResonances, RejectsBadArguments) {
  EXPECT_THROW(find_resonances({0, 8, -3, 0}, kRef, 1e-14), Error);
  EXPECT_THROW(find_resonances({-1, 8, -3, 0}, kRef), Error);
  EXPECT_THROW(find_resonances({0, 8, -3, 1}, kRef), Error);
}

TEST(Residue, DerivativeMatchesContour) {
  for (const auto& p : find_resonances({0, 8, -3, 0}, kRef)) {
    const cplx contour = residue_s_contour(p.k, kRef);
    EXPECT_LT(std::abs(residue_s(p.k, kRef) - contour) / std::abs(contour), 1e-8);
    EXPECT_EQ(residue_s(p.k, kRef), p.residue_s);
  }
}

TEST(Residue, RejectsNonPoles) {
  try {
    residue_s(WaveNumber(cplx(2, -0.3)), kFree);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAPole);
  }
}

TEST(AntiResonance, MirrorsResonance) {
  for (const auto& p : find_resonances({0, 20, -3, 0}, kRef)) {
    const AntiResonancePole a = pair_antiresonance(p, kRef);
    EXPECT_EQ(a.k.q, -std::conj(p.k.q));
    EXPECT_LT(std::abs(a.m_sq - std::conj(p.n_sq)), 1e-8 * std::abs(p.n_sq));
    EXPECT_LT(std::abs(a.z.z - std::conj(p.z.z)), 1e-12 * std::abs(p.z.z));
    EXPECT_GT(a.z.z.imag(), 0.0);
    EXPECT_EQ(a.z.sheet, Sheet::second);
    EXPECT_GT(std::abs(s_matrix(WaveNumber(a.k.q + 1e-6), kRef)), 1e4);
  }
}
