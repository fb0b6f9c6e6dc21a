#include <gtest/gtest.h>

#include <random>

#include "collatz_lab/numdomain.hpp"

using namespace collatz_lab;

namespace {

// Counts trailing zero bits by repeated halving; independent of mpz_scan1.
std::uint64_t expo_oracle(std::uint64_t v) {
  std::uint64_t e = 0;
  while (v % 2 == 0) {
    v /= 2;
    ++e;
  }
  return e;
}

JElem J(long k, long num, long den) { return JElem(BigInt(k), Rat(BigInt(num), BigInt(den))); }

}  // namespace

TEST(Expo, Examples) {
  EXPECT_EQ(expo(Nat(1)), 0u);
  EXPECT_EQ(expo(Nat(12)), 2u);
  EXPECT_EQ(expo(Nat(16)), 4u);
  EXPECT_EQ(expo(Nat(80)), 4u);
  EXPECT_EQ(expo(pow2(200)), 200u);
}

TEST(Expo, ZeroIsDomainError) {
  EXPECT_THROW(expo(Nat(0)), DomainError);
  EXPECT_THROW(odd_part(Nat(0)), DomainError);
}

TEST(Expo, FactorisationMatchesLoopOracle) {
  for (std::uint64_t v = 1; v <= (1u << 16); ++v) {
    const std::uint64_t e = expo(Nat(v));
    ASSERT_EQ(e, expo_oracle(v)) << v;
    const Nat odd = odd_part(Nat(v));
    ASSERT_TRUE(odd.is_odd()) << v;
    ASSERT_EQ(odd.shl(e), Nat(v)) << v;
  }
}

TEST(Nat, RejectsNegativeAndUnderflow) {
  EXPECT_THROW(Nat(-1), DomainError);
  EXPECT_THROW(Nat(3) - Nat(4), DomainError);
  EXPECT_EQ(Nat(4) - Nat(3), Nat(1));
  EXPECT_THROW(Nat(6).shr_exact(2), PreconditionError);
  EXPECT_EQ(Nat(12).shr_exact(2), Nat(3));
}

TEST(Nat, ParseRoundTrip) {
  const std::string big = "340282366920938463463374607431768211457";
  EXPECT_EQ(Nat::parse(big).str(), big);
  EXPECT_EQ(Nat::parse(big), pow2(128) + Nat(1));
  EXPECT_THROW(Nat::parse(""), DomainError);
  EXPECT_THROW(Nat::parse("-3"), DomainError);
  EXPECT_THROW(Nat::parse("1 2"), DomainError);
  EXPECT_THROW(Nat::parse("0x10"), DomainError);
}

TEST(PowerBuilders, P2MatchesShift) {
  for (std::uint64_t x = 0; x <= 64; ++x) {
    ASSERT_EQ(p2(x), Nat(1).shl(x)) << x;
    ASSERT_EQ(p2(x), pow2(x)) << x;
  }
}

TEST(PowerBuilders, P3MatchesMultiplication) {
  EXPECT_EQ(p3(Nat(13), 2), Nat(117));
  for (std::uint64_t y = 0; y <= 1000; y += 37) {
    Nat expected(y);
    for (std::uint64_t x = 0; x <= 20; ++x) {
      ASSERT_EQ(p3(Nat(y), x), expected) << y << "*3^" << x;
      ASSERT_EQ(Nat(y) * pow3(x), expected);
      expected = expected * Nat(3);
    }
  }
}

TEST(PowerOfTwo, Predicate) {
  EXPECT_TRUE(is_power_of_two(Nat(1)));
  EXPECT_TRUE(is_power_of_two(Nat(64)));
  EXPECT_FALSE(is_power_of_two(Nat(0)));
  EXPECT_FALSE(is_power_of_two(Nat(12)));
}

TEST(Rat, CanonicalForm) {
  EXPECT_EQ(Rat(BigInt(810), BigInt(64)).str(), "405/32");
  EXPECT_EQ(Rat(BigInt(3), BigInt(-6)).str(), "-1/2");
  EXPECT_EQ(Rat::parse("5").str(), "5/1");
  EXPECT_EQ(Rat::parse("4/8"), Rat(BigInt(1), BigInt(2)));
  EXPECT_THROW(Rat(BigInt(1), BigInt(0)), DomainError);
}

TEST(JElem, StructureInvariant) {
  EXPECT_NO_THROW(J(-10, 1, 2));
  EXPECT_THROW(J(-1, 0, 1), DomainError);
  EXPECT_THROW(J(1, -1, 2), DomainError);
  EXPECT_TRUE(J(19, 0, 1).reachable());
  EXPECT_FALSE(J(8, 1, 2).reachable());
}

TEST(JElem, AddExamplesAndLaws) {
  EXPECT_EQ(jadd(J(8, 1, 2), J(3, 1, 4)), J(11, 3, 4));
  EXPECT_EQ(jadd(J(-10, 1, 2), J(4, 0, 1)), J(-6, 1, 2));
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> kd(-1000, 1000);
  std::uniform_int_distribution<long> nd(0, 500);
  std::uniform_int_distribution<long> dd(1, 64);
  for (int i = 0; i < 2000; ++i) {
    const JElem a = J(kd(rng), 1 + nd(rng), dd(rng));
    const JElem b = J(kd(rng), 1 + nd(rng), dd(rng));
    ASSERT_EQ(jadd(a, b), jadd(b, a));
    ASSERT_EQ(jadd(a, JElem::zero()), a);
  }
}

TEST(JElem, Div2) {
  EXPECT_EQ(jdiv2(J(8, 1, 2)), J(4, 1, 4));
  EXPECT_EQ(jdiv2(J(-10, 3, 4)), J(-5, 3, 8));
  EXPECT_THROW(jdiv2(J(7, 1, 2)), PreconditionError);
}

TEST(JElem, TimesThreePlusOne) {
  EXPECT_EQ(times3plus1(J(1, 1, 16)), J(4, 3, 16));
  EXPECT_EQ(times3plus1(J(19, 5, 1)), J(58, 15, 1));
  EXPECT_EQ(times3plus1(JElem::from_nat(Nat(13))), JElem::from_nat(Nat(40)));
}

TEST(JElem, OrderHeightFirst) {
  EXPECT_EQ(compare(J(100, 0, 1), J(-100, 1, 2)), std::strong_ordering::less);
  EXPECT_EQ(compare(J(3, 1, 2), J(4, 1, 2)), std::strong_ordering::less);
  EXPECT_EQ(compare(J(4, 1, 2), J(4, 1, 2)), std::strong_ordering::equal);
  EXPECT_EQ(compare(J(0, 1, 1000), J(5, 0, 1)), std::strong_ordering::greater);
}

TEST(JElem, OrderIsTotalAndTransitive) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> kd(-5, 5);
  std::uniform_int_distribution<long> nd(1, 3);
  std::vector<JElem> xs;
  for (int i = 0; i < 40; ++i) xs.push_back(J(kd(rng), nd(rng), nd(rng)));
  for (const auto& a : xs) {
    for (const auto& b : xs) {
      const auto ab = compare(a, b);
      ASSERT_EQ(ab == 0, a == b);
      ASSERT_EQ(ab < 0, compare(b, a) > 0);
      for (const auto& c : xs) {
        if (ab < 0 && compare(b, c) < 0) {
          ASSERT_TRUE(compare(a, c) < 0);
        }
      }
    }
  }
}

TEST(JElem, ParseRenderRoundTrip) {
  for (const char* s : {"8+1/2", "19+5/1", "-10+3/4", "19+0/1", "1+3645/8192"}) {
    EXPECT_EQ(JElem::parse(s).str(), s);
  }
  EXPECT_THROW(JElem::parse("8"), DomainError);
  EXPECT_THROW(JElem::parse("-1+0/1"), DomainError);
}

TEST(DomainElement, CrossDomainRejected) {
  const DomainElement n = Nat(5);
  const DomainElement j = J(5, 0, 1);
  EXPECT_EQ(render(times3plus1(n)), "16");
  EXPECT_EQ(render(times3plus1(j)), "16+0/1");
  EXPECT_THROW(add(n, j), DomainError);
  EXPECT_THROW(compare(n, j), DomainError);
}
