#include <gtest/gtest.h>

#include <random>

#include "qfkit/quadlocal.hpp"

using namespace qfkit;

namespace {

std::vector<Place> all_places(const std::vector<QuadElement>& xs, long long d) {
  std::vector<Place> out = quad_real_places(d);
  for (long long p : quad_support(xs, d))
    for (const auto& v : quad_places_over(p, d)) out.push_back(v);
  return out;
}

QuadElement random_elt(std::mt19937_64& rng, long long d) {
  std::uniform_int_distribution<int> c(-12, 12);
  QuadElement z;
  do {
    z = QuadElement(d, c(rng), c(rng));
  } while (z.is_zero());
  return z;
}

}  // namespace

TEST(QuadElement, Arithmetic) {
  QuadElement a(2, 1, 1), b(2, 3, -1);
  EXPECT_EQ((a * b).x, Rational(1));
  EXPECT_EQ((a * b).y, Rational(2));
  EXPECT_EQ(a.norm(), Rational(-1));
  EXPECT_EQ((a / a).x, Rational(1));
  EXPECT_TRUE(is_square_quad(QuadElement(2, 3, 2)));  // (1+sqrt2)^2
  EXPECT_TRUE(is_square_quad(QuadElement(2, 2, 0)));
  EXPECT_TRUE(is_square_quad(QuadElement(-1, -1, 0)));
  EXPECT_FALSE(is_square_quad(QuadElement(2, 3, 0)));
  EXPECT_EQ(real_sign(QuadElement(2, 1, -1), 1), -1);
  EXPECT_EQ(real_sign(QuadElement(2, 1, -1), -1), 1);
}

TEST(QuadElement, MultiQuadNorm) {
  MultiQuadElement z({2, 3});
  z.coords = {1, 1, 1, 0};  // 1 + sqrt2 + sqrt3
  Rational n = z.norm();
  // (1+s2+s3)(1-s2+s3)(1+s2-s3)(1-s2-s3) = ((1+s3)^2-2)((1-s3)^2-2) = (2+2s3)(2-2s3) = -8
  EXPECT_EQ(n, Rational(-8));
}

TEST(QuadHilbert, RationalArgumentsRestrict) {
  for (long long d : {-1LL, 2LL, -2LL, 3LL, 5LL, -3LL, 6LL, -5LL, 7LL, 17LL, -7LL, 10LL, -15LL}) {
    for (long long a : {-1LL, 2LL, 3LL, -6LL, 5LL, 7LL}) {
      for (long long b : {-1LL, -2LL, 3LL, 5LL, 11LL, 13LL}) {
        QuadElement qa(d, a), qb(d, b);
        for (const auto& v : all_places({qa, qb}, d)) {
          int expect;
          if (v.is_real()) expect = hilbert_Q(a, b, 0);
          else if (v.tag == SplitTag::Split) expect = hilbert_Q(a, b, v.p);
          else expect = 1;
          EXPECT_EQ(hilbert_symbol_quad(qa, qb, v), expect) << "d=" << d << " (" << a << "," << b << ") at " << v.str();
        }
      }
    }
  }
}

TEST(QuadHilbert, ProductFormulaAndBilinearity) {
  std::mt19937_64 rng(3);
  for (long long d : {-1LL, 2LL, -2LL, 3LL, 5LL, -3LL, 6LL, 7LL, -5LL, 17LL, -7LL}) {
    for (int it = 0; it < 25; ++it) {
      QuadElement a = random_elt(rng, d), b = random_elt(rng, d), c = random_elt(rng, d);
      int prod = 1;
      for (const auto& v : all_places({a, b, c}, d)) {
        int ab = hilbert_symbol_quad(a, b, v);
        prod *= ab;
        EXPECT_EQ(ab, hilbert_symbol_quad(b, a, v));
        EXPECT_EQ(hilbert_symbol_quad(a * c, b, v), hilbert_symbol_quad(a, b, v) * hilbert_symbol_quad(c, b, v));
        EXPECT_EQ(hilbert_symbol_quad(a, -a, v), 1);
      }
      EXPECT_EQ(prod, 1) << "d=" << d << " a=" << a.str() << " b=" << b.str();
    }
  }
}

TEST(QuadHyperbolic, SpecExamples) {
  auto k = FieldTower::rationals();
  long long d = 7, c = 3;
  EXPECT_TRUE(is_hyperbolic_quadfield(QuadForm::over_Q({1, -d, c, -c * d}), d));
  EXPECT_FALSE(is_hyperbolic_quadfield(QuadForm::over_Q({1, 1, 1, 1}), 2));
  EXPECT_TRUE(is_hyperbolic_quadfield(QuadForm::over_Q({1, 7, -1, -7}), 5));
  // agreement with the multiquadratic engine on rational forms
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long long> e(-20, 20);
  for (long long dd : {-1LL, 2LL, -2LL, 3LL, 5LL, -3LL, 6LL, -7LL, 17LL}) {
    for (int it = 0; it < 30; ++it) {
      std::vector<long long> xs;
      while (xs.size() < 4) {
        long long x = e(rng);
        if (x) xs.push_back(x);
      }
      if (it % 3 == 0) xs = {1, -xs[0], -xs[1], xs[0] * xs[1]};
      QuadForm f(k);
      for (long long x : xs) f.entries.push_back(class_of(x, k));
      EXPECT_EQ(is_hyperbolic_quadfield(f, dd), is_hyperbolic_multiquad(f, {dd})) << dd << " " << f.str();
    }
  }
  (void)k;
}

TEST(QuadHyperbolic, IrrationalEntries) {
  // <1, -(1+sqrt2)^2> is hyperbolic; <1, -(1+sqrt2)> is not (not a square)
  long long d = 2;
  QuadElement u(d, 1, 1);
  EXPECT_TRUE(is_hyperbolic_quadfield({QuadElement(d, 1), -(u * u)}, d));
  EXPECT_FALSE(is_hyperbolic_quadfield({QuadElement(d, 1), -u}, d));
  // <<u, v>> x <1,-1> style: <1,-u> + <-1, u>
  EXPECT_TRUE(is_hyperbolic_quadfield({QuadElement(d, 1), -u, QuadElement(d, -1), u}, d));
}
