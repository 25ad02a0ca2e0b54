#include <gtest/gtest.h>

#include <random>

#include "qfkit/constructions.hpp"

using namespace qfkit;

namespace {

const FieldTower kQ = FieldTower::rationals();

std::vector<MonomialElement> ints(std::initializer_list<long long> xs) {
  std::vector<MonomialElement> v;
  for (long long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST(Constructions, Fork3) {
  auto b = build_fork(ints({2, 3, 5}), kQ);
  EXPECT_EQ(b.rho.dim(), 14u);
  EXPECT_EQ(b.status("dimension"), ClaimStatus::Verified);
  EXPECT_EQ(b.status("anisotropic"), ClaimStatus::Verified);
  EXPECT_EQ(b.status("identity <<-t>> - <<-at>>"), ClaimStatus::Verified);
  EXPECT_EQ(b.status("I^n"), ClaimStatus::Verified);
  EXPECT_EQ(b.status("Arason-Pfister"), ClaimStatus::Verified);
  EXPECT_EQ(b.status("reduction_hypothesis"), ClaimStatus::Verified);
  ASSERT_TRUE(b.reduction);
  EXPECT_EQ(b.reduction->anisotropic_dim, 14);
  EXPECT_TRUE(recheck(b));
  // the other sign variant is recorded, whatever its truth value
  EXPECT_NE(b.claim("identity <<at>> - <<t>>"), nullptr);
}

TEST(Constructions, ForkDimensions) {
  for (int n = 1; n <= 4; ++n) {
    std::vector<MonomialElement> a;
    for (long long p : first_primes(n)) a.emplace_back(p);
    auto b = build_fork(a, kQ);
    EXPECT_EQ(static_cast<long long>(b.rho.dim()), (2LL << n) - 2);
    EXPECT_EQ(b.status("identity <<-t>> - <<-at>>"), ClaimStatus::Verified) << n;
    EXPECT_EQ(b.status("anisotropic"), ClaimStatus::Verified) << n;
    EXPECT_NE(b.status("I^n"), ClaimStatus::Failed);
  }
  EXPECT_THROW(build_fork(ints({2, 8}), kQ), Error);
  EXPECT_THROW(build_fork(ints({3, 5}), FieldTower::prime_field(7)), Error);
}

TEST(Constructions, ForkOverFiniteLaurentBase) {
  // F_7 has only two square classes; F_7((u)) supplies the second independent class
  FieldTower k = FieldTower::prime_field(7, {"u"});
  auto b = build_fork({MonomialElement(3), MonomialElement(BaseElement(1), {1})}, k);
  EXPECT_EQ(b.rho.dim(), 6u);
  EXPECT_EQ(b.status("anisotropic"), ClaimStatus::Verified);
  EXPECT_EQ(b.status("identity <<-t>> - <<-at>>"), ClaimStatus::Verified);
}

TEST(Constructions, EightDim) {
  auto b = build_8dim(2, 3, 5, kQ);
  EXPECT_EQ(b.status("dimension"), ClaimStatus::Verified);
  EXPECT_EQ(b.status("I^2"), ClaimStatus::Verified);
  EXPECT_EQ(b.status("decomposition <<a0>> - t1<<a0a1>> - t2<<a0a2>> + t1t2<<a0a1a2>>"), ClaimStatus::Verified);
  EXPECT_EQ(b.status("Clifford class is (t1,t2) + (a1 t1, a2 t2)"), ClaimStatus::Verified);
  EXPECT_EQ(b.status("glued components"), ClaimStatus::Verified);
  EXPECT_EQ(b.status("anisotropic"), ClaimStatus::Verified);
  EXPECT_THROW(build_8dim(2, 8, 3, kQ), Error);
  EXPECT_TRUE(recheck(b));
}

TEST(Constructions, EightDimRandomDecomposition) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<long long> d(-30, 30);
  int done = 0;
  while (done < 8) {
    long long a0 = d(rng), a1 = d(rng), a2 = d(rng);
    if (!a0 || !a1 || !a2) continue;
    if (multiquad_degree(std::vector<MonomialElement>{a0, a1, a2}, kQ) != 8) continue;
    auto b = build_8dim(a0, a1, a2, kQ);
    EXPECT_EQ(b.status("decomposition <<a0>> - t1<<a0a1>> - t2<<a0a2>> + t1t2<<a0a1a2>>"), ClaimStatus::Verified);
    ++done;
  }
}

TEST(Constructions, PhiTPhi) {
  std::vector<MonomialElement> samples = ints({2, 3, -1, 7, -2, 6});
  auto b = build_phi_t_phi(QuadForm::over_Q({1, -2}), samples);
  EXPECT_EQ(b.status("t in H(rho)"), ClaimStatus::Verified);
  EXPECT_EQ(b.status("G(rho) and G(phi) agree on k*"), ClaimStatus::Verified);
  EXPECT_EQ(b.status("G(rho) = H(rho) on samples"), ClaimStatus::Verified);
  EXPECT_EQ(b.status("G(phi_K) = K*^2 G(phi) on samples"), ClaimStatus::Verified);
  EXPECT_FALSE(in_G(MonomialElement(3), QuadForm::over_Q({1, -2})));
  auto h = build_phi_t_phi(hyperbolic(1, kQ), samples);
  EXPECT_TRUE(is_hyperbolic(h.rho));
  EXPECT_EQ(h.status("G(rho) and G(phi) agree on k*"), ClaimStatus::Verified);
}

TEST(Constructions, Registry) {
  auto f = paper_example("fork3");
  EXPECT_EQ(f.rho.dim(), 14u);
  auto e = paper_example("8i2");
  EXPECT_EQ(e.rho.dim(), 8u);
  EXPECT_THROW(paper_example("unknown"), Error);
  EXPECT_EQ(paper_example("fork-2").rho.dim(), 6u);
}

TEST(Constructions, RationalFunctionExamples) {
  auto g = paper_example("gille-cd3");
  EXPECT_EQ(g.status("dimension"), ClaimStatus::Verified);
  EXPECT_EQ(g.status("I^2"), ClaimStatus::Verified);
  EXPECT_EQ(g.status("anisotropic"), ClaimStatus::Verified);
  EXPECT_EQ(g.status("decomposition <<a0>> - t1<<a0a1>> - t2<<a0a2>> + t1t2<<a0a1a2>>"), ClaimStatus::Verified);
  auto s = paper_example("sivatski-fork");
  EXPECT_EQ(s.rho.dim(), 14u);
  EXPECT_EQ(s.status("identity <<-t>> - <<-at>>"), ClaimStatus::Verified);
  EXPECT_EQ(s.status("I^n"), ClaimStatus::Verified);
  EXPECT_EQ(s.status("anisotropic"), ClaimStatus::Verified);
  EXPECT_EQ(s.status("reduction_hypothesis"), ClaimStatus::Verified);
  EXPECT_EQ(s.status("norm witnesses"), ClaimStatus::Verified);
  EXPECT_EQ(s.status("G(phi) != H(phi)"), ClaimStatus::Cited);
  ASSERT_EQ(s.citations.size(), 1u);
}
