#include <gtest/gtest.h>

#include <random>

#include "shellres/model.hpp"

using namespace shellres;

TEST(Potential, AcceptsValidInput) {
  const PotentialSpec p = make_potential(10, 1, 2, 1);
  EXPECT_EQ(p.v0, 10);
  EXPECT_EQ(p.a, 1);
  EXPECT_EQ(p.b, 2);
  EXPECT_EQ(p.scale, 1);
  EXPECT_NO_THROW(make_potential(0, 1, 2, 1));
  EXPECT_NO_THROW(make_potential(-5, 1, 2, 3));
}

TEST(Potential, RejectsBadInput) {
  try {
    make_potential(10, 2, 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OrderedRadii);
  }
  EXPECT_THROW(make_potential(10, 1, 2, 0), Error);
  EXPECT_THROW(make_potential(10, 1, 2, -1), Error);
  EXPECT_THROW(make_potential(10, 0, 2, 1), Error);
  EXPECT_THROW(make_potential(NAN, 1, 2, 1), Error);
  EXPECT_THROW(make_potential(10, 1, INFINITY, 1), Error);
}

TEST(Potential, PiecewiseValue) {
  const PotentialSpec p = make_potential(10, 1, 2, 1);
  EXPECT_EQ(p.at(0.5), 0.0);
  EXPECT_EQ(p.at(1.5), 10.0);
  EXPECT_EQ(p.at(2.5), 0.0);
}

TEST(Energy, SheetsFollowQuadrants) {
  const PotentialSpec p = make_potential(10, 1, 2, 1);
  auto e = energy_from_k(WaveNumber(2.0), p);
  EXPECT_EQ(e.z, cplx(4, 0));
  EXPECT_EQ(e.sheet, Sheet::first);
  e = energy_from_k(WaveNumber(cplx(0, 1)), p);
  EXPECT_NEAR(std::abs(e.z - cplx(-1, 0)), 0.0, 1e-15);
  EXPECT_EQ(e.sheet, Sheet::first);
  e = energy_from_k(WaveNumber(cplx(1, -0.5)), p);
  EXPECT_NEAR(std::abs(e.z - cplx(0.75, -1)), 0.0, 1e-15);
  EXPECT_EQ(e.sheet, Sheet::second);
}

TEST(Energy, ScaleDividesSquare) {
  const PotentialSpec p = make_potential(10, 1, 2, 4);
  EXPECT_NEAR(std::abs(energy_from_k(WaveNumber(cplx(2, 1)), p).z - cplx(3, 4) / 4.0), 0.0, 1e-15);
}

TEST(Energy, ReflectionKeepsEnergyChangesSheet) {
  const PotentialSpec p = make_potential(10, 1, 2, 1);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 200; ++i) {
    const WaveNumber q(cplx(u(rng), u(rng)));
    const auto e1 = energy_from_k(q, p), e2 = energy_from_k(-q, p);
    EXPECT_EQ(e1.z, e2.z);
    if (q.im() != 0.0) EXPECT_NE(e1.sheet, e2.sheet);
  }
}

TEST(InnerMomentum, Examples) {
  EXPECT_EQ(inner_momentum(WaveNumber(cplx(1.3, -0.2)), make_potential(0, 1, 2, 1)), cplx(1.3, -0.2));
  const PotentialSpec p = make_potential(10, 1, 2, 1);
  EXPECT_NEAR(std::abs(inner_momentum(WaveNumber(1.0), p) - cplx(0, 3)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(inner_momentum(WaveNumber(4.0), p) - std::sqrt(6.0)), 0.0, 1e-15);
}

TEST(InnerMomentum, SquareRecoversRadicand) {
  const PotentialSpec p = make_potential(10, 1, 2, 1.7);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-8, 8);
  for (int i = 0; i < 500; ++i) {
    const WaveNumber q(cplx(u(rng), u(rng)));
    const cplx Q = inner_momentum(q, p);
    EXPECT_LE(std::abs(Q * Q + p.scale * p.v0 - q.q * q.q), 1e-14 * std::max(1.0, std::norm(q.q)));
  }
}

TEST(InnerMomentum, RealAboveBarrierAndUpperLipOnCut) {
  const PotentialSpec p = make_potential(10, 1, 2, 1);
  for (double k = 3.2; k < 20; k += 0.1) {
    const cplx Q = inner_momentum(WaveNumber(k), p);
    EXPECT_EQ(Q.imag(), 0.0);
    EXPECT_GT(Q.real(), 0.0);
  }
  // Below the barrier the radicand is negative real; even a signed-zero
  // imaginary part must give Im Q >= 0.
  EXPECT_GT(inner_momentum(WaveNumber(cplx(1.0, -0.0)), p).imag(), 0.0);
  EXPECT_GT(inner_momentum(WaveNumber(cplx(-1.0, 0.0)), p).imag(), 0.0);
}
