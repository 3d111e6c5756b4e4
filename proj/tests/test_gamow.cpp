#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shellres/expansions.hpp"
#include "shellres/gamow.hpp"

using namespace shellres;

namespace {

const PotentialSpec kRef = make_potential(10, 1, 2, 1);

const std::vector<ResonancePole>& reference_poles() {
  static const auto poles = find_resonances({0, 20, -3, 0}, kRef);
  return poles;
}

}  // namespace

TEST(Gamow, TailAndOrigin) {
  for (const auto& p : reference_poles()) {
    const GamowState u = gamow_state(p, kRef);
    EXPECT_EQ(u.value(0.0, kRef), cplx(0));
    EXPECT_LT(std::abs(u.norm * u.norm - p.n_sq), 1e-12 * std::abs(p.n_sq));
    for (double r : {2.1, 3.0, 5.5})
      EXPECT_LT(std::abs(u.value(r, kRef) * std::exp(-I * p.k.q * r) - u.norm), 1e-12 * std::abs(u.norm));
    EXPECT_LE(tail_impurity(u, kRef), 1e-11);
  }
}

TEST(Gamow, SmoothAtJunctions) {
  for (const auto& p : reference_poles()) EXPECT_LE(matching_defect(gamow_state(p, kRef), kRef), 1e-11);
}

TEST(Gamow, SolvesSchrodingerEquation) {
  for (const auto& p : reference_poles()) {
    const GamowState u = gamow_state(p, kRef);
    EXPECT_LE(schrodinger_residual(u, kRef), 1e-10);
    GamowState scaled = u;
    scaled.norm *= cplx(3.0, -2.0);
    EXPECT_NEAR(schrodinger_residual(scaled, kRef), schrodinger_residual(u, kRef), 1e-13);
  }
  EXPECT_THROW(schrodinger_residual(gamow_state(reference_poles()[0], kRef), kRef, 50), Error);
}

TEST(Gamow, AgreesWithOdeOracle) {
  // u is a multiple of the regular solution: norm * chi / J3.
  for (const auto& p : reference_poles()) {
    const GamowState u = gamow_state(p, kRef);
    const JostCoeffs c = match_coeffs(p.k, kRef);
    for (double r : {0.5, 1.5}) {
      const cplx expected = u.norm * oracle::regular(r, p.k.q, kRef).u / c.j3;
      EXPECT_LT(std::abs(u.value(r, kRef) - expected) / std::abs(expected), 1e-8) << r;
    }
  }
}

TEST(AntiResonanceState, IncomingTailAndResidual) {
  for (const auto& p : reference_poles()) {
    const GamowState v = antiresonance_state(pair_antiresonance(p, kRef), kRef);
    EXPECT_TRUE(v.anti);
    for (double r : {2.5, 4.0})
      EXPECT_LT(std::abs(v.value(r, kRef) - v.norm * std::exp(-I * std::conj(p.k.q) * r)), 1e-12 * std::abs(v.value(r, kRef)));
    EXPECT_LE(schrodinger_residual(v, kRef), 1e-10);
    EXPECT_LT(std::abs(v.z.z - std::conj(p.z.z)), 1e-12 * std::abs(p.z.z));
  }
}

TEST(AntiResonanceState, TimeReversedPartner) {
  const auto radii = TestFunction::uniform_grid(6.0, 300);
  for (const auto& p : reference_poles()) {
    const GamowState u = gamow_state(p, kRef);
    const GamowState v = antiresonance_state(pair_antiresonance(p, kRef), kRef);
    const PhaseFit fit = time_reversal_fit(u, v, kRef, radii);
    EXPECT_LE(fit.residual, 1e-9);
    EXPECT_NEAR(std::abs(fit.phase), 1.0, 1e-12);
    for (double r : radii) EXPECT_NEAR(std::abs(v.value(r, kRef)), std::abs(u.value(r, kRef)), 1e-10 * std::abs(u.value(r, kRef)) + 1e-300);
  }
}

TEST(Gamow, NormLinksToResidue) {
  for (const auto& p : reference_poles()) EXPECT_EQ(gamow_state(p, kRef).norm_sq, I * residue_s(p.k, kRef));
}
