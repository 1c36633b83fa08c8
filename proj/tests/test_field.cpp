#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cdiff/field.hpp"
#include "cdiff/numeric.hpp"

using namespace cdiff;

namespace {

// Multiplicative order by repeated multiplication; independent of the
// library's prime-divisor test.
std::uint64_t naive_order(const Field& f, Element a) {
  Element x = a;
  std::uint64_t k = 1;
  while (x != 1) {
    x = f.mul(x, a);
    ++k;
  }
  return k;
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kSmallFields = {
    {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 1}, {3, 2}, {3, 3}, {3, 4},
    {5, 1}, {5, 2}, {5, 3}, {7, 1}, {7, 2}, {11, 1}, {11, 2}, {13, 2}};

}  // namespace

TEST(Modulus, DefaultsMatchHandComputedPolynomials) {
  EXPECT_EQ(find_primitive_modulus(3, 2), (Coefficients{2, 1, 1}));
  EXPECT_EQ(find_primitive_modulus(2, 3), (Coefficients{1, 1, 0, 1}));
  // Prime field: root is the smallest primitive root.
  EXPECT_EQ(find_primitive_modulus(3, 1), (Coefficients{1, 1}));
  EXPECT_EQ(find_primitive_modulus(7, 1), (Coefficients{4, 1}));
}

TEST(Modulus, DefaultIsSmallestPrimitiveCandidate) {
  // Brute force: walk candidates in order, test primitivity by naive order of x.
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 4}, {3, 3}, {5, 2}, {2, 6}}) {
    const Coefficients chosen = find_primitive_modulus(p, n);
    const std::uint64_t q = checked_pow(p, n);
    for (std::uint64_t v = 1; v < q; ++v) {
      Coefficients f(n + 1);
      std::uint64_t t = v;
      for (std::uint32_t i = 0; i < n; ++i, t /= p) f[i] = static_cast<std::uint32_t>(t % p);
      f[n] = 1;
      if (f == chosen) break;
      if (f[0] == 0) continue;
      bool primitive = false;
      try {
        const Field field = Field::build(p, n, f);
        primitive = naive_order(field, p) == q - 1;
      } catch (const FieldError&) {
      }
      EXPECT_FALSE(primitive) << "smaller primitive candidate " << format_coefficients(f);
    }
  }
}

TEST(Modulus, Errors) {
  EXPECT_THROW(find_primitive_modulus(4, 2), FieldError);
  EXPECT_THROW(find_primitive_modulus(2, 30), FieldError);
  EXPECT_THROW(Field::build(6, 1), FieldError);
  EXPECT_THROW(Field::build(3, 0), FieldError);
}

TEST(Field, BuildAcceptsIrreducibleNonPrimitiveModuli) {
  const Field f9 = Field::build(3, 2, Coefficients{1, 0, 1});  // x^2 + 1
  EXPECT_EQ(f9.order(), 9u);
  EXPECT_NE(f9.generator(), 3u);
  EXPECT_EQ(naive_order(f9, f9.generator()), 8u);
  EXPECT_EQ(naive_order(f9, 3), 4u);

  const Field f16 = Field::build(2, 4, Coefficients{1, 1, 1, 1, 1});
  EXPECT_NE(f16.generator(), 2u);
  EXPECT_EQ(f16.pow(2, 5), 1u);
  EXPECT_EQ(naive_order(f16, f16.generator()), 15u);
}

TEST(Field, BuildRejectsBadModuli) {
  EXPECT_THROW(Field::build(3, 2, Coefficients{2, 0, 1}), FieldError);     // x^2 + 2 = (x+1)(x+2)
  EXPECT_THROW(Field::build(3, 2, Coefficients{2, 1, 1, 1}), FieldError);  // wrong degree
  EXPECT_THROW(Field::build(3, 2, Coefficients{2, 1, 2}), FieldError);     // not monic
  EXPECT_THROW(Field::build(3, 2, Coefficients{2, 5, 1}), FieldError);     // coefficient >= p
  EXPECT_THROW(Field::build(2, 4, Coefficients{1, 0, 1, 0, 1}), FieldError);  // (x^2+x+1)^2
}

TEST(Field, NineElementExamples) {
  const Field f = Field::build(3, 2);
  EXPECT_EQ(f.generator(), 3u);
  EXPECT_EQ(f.add(3, 1), 4u);
  EXPECT_EQ(f.mul(3, 3), 7u);  // g^2 = 2g + 1
  EXPECT_EQ(f.trace(0), 0u);
  EXPECT_EQ(f.trace(1), 2u);
  EXPECT_EQ(f.trace(3), 2u);
  EXPECT_EQ(f.quadratic_character(0), 0);
  EXPECT_EQ(f.quadratic_character(1), 1);
  EXPECT_EQ(f.quadratic_character(f.scalar(-1)), 1);
  EXPECT_EQ(f.quadratic_character(3), -1);
}

TEST(Field, EightElementExamples) {
  const Field f = Field::build(2, 3);
  EXPECT_EQ(f.add(5, 5), 0u);
  const Element g = f.generator();
  EXPECT_EQ(f.pow(g, 7), 1u);
  EXPECT_EQ(f.pow(g, 3), f.mul(g, f.mul(g, g)));
}

TEST(Field, PowConventionsAndErrors) {
  const Field f = Field::build(5, 2);
  EXPECT_EQ(f.pow(0, 0), 1u);
  EXPECT_EQ(f.pow(0, 7), 0u);
  EXPECT_EQ(f.inv(1), 1u);
  EXPECT_THROW(f.inv(0), FieldError);
  EXPECT_THROW(f.log(0), FieldError);
  EXPECT_THROW(f.relative_trace(3, 3), FieldError);
  EXPECT_THROW(Field::build(2, 3).quadratic_character(1), FieldError);
  for (Element a = 1; a < f.order(); ++a) {
    EXPECT_EQ(f.pow(a, f.order() - 1), 1u);
    EXPECT_EQ(f.pow(a, 1000003), f.pow(a, 1000003 % (f.order() - 1)));
    EXPECT_EQ(f.pow(f.generator(), f.log(a)), a);
  }
}

TEST(Field, RingAxiomsExhaustive) {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}}) {
    const Field f = Field::build(p, n);
    const Element q = f.order();
    for (Element a = 0; a < q; ++a) {
      EXPECT_EQ(f.add(a, 0), a);
      EXPECT_EQ(f.mul(a, 1), a);
      EXPECT_EQ(f.add(a, f.neg(a)), 0u);
      if (a) {
        EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
      }
      for (Element b = 0; b < q; ++b) {
        EXPECT_EQ(f.add(a, b), f.add(b, a));
        EXPECT_EQ(f.mul(a, b), f.mul(b, a));
        for (Element c = 0; c < q; c += (q > 16 ? 3 : 1)) {
          ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
          ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
          ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST(Field, RingAxiomsRandomized) {
  std::mt19937_64 rng(7);
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 12}, {3, 7}, {7, 4}, {13, 3}, {2, 20}}) {
    const Field f = Field::build(p, n);
    for (int i = 0; i < 2000; ++i) {
      const Element a = rng() % f.order(), b = rng() % f.order(), c = rng() % f.order();
      ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      ASSERT_EQ(f.sub(f.add(a, b), b), a);
      if (b) {
        ASSERT_EQ(f.mul(f.div(a, b), b), a);
      }
    }
  }
}

TEST(Field, GeneratorHasFullOrder) {
  for (auto [p, n] : kSmallFields) {
    const Field f = Field::build(p, n);
    EXPECT_EQ(naive_order(f, f.generator()), f.order() - 1) << p << "^" << n;
    if (n >= 2) {
      EXPECT_EQ(f.generator(), p) << "default modulus should make x primitive";
    }
  }
}

TEST(Field, TablesAgreeWithPolynomialReduction) {
  for (auto [p, n] : kSmallFields) {
    const Field t = Field::build(p, n);
    const Field r = Field::build(p, n, std::nullopt, FieldOptions{kDefaultSizeLimit, 0});
    ASSERT_TRUE(t.has_tables());
    ASSERT_FALSE(r.has_tables());
    for (Element a = 0; a < t.order(); ++a) {
      for (Element b = 0; b < t.order(); ++b) {
        ASSERT_EQ(t.mul(a, b), r.mul(a, b));
        ASSERT_EQ(t.add(a, b), r.add(a, b));
        ASSERT_EQ(t.mul(a, b), t.mul_reference(a, b));
        ASSERT_EQ(t.add(a, b), t.add_reference(a, b));
      }
      ASSERT_EQ(t.inv(a ? a : 1), r.inv(a ? a : 1));
      ASSERT_EQ(t.pow(a, 12345), r.pow(a, 12345));
      if (p != 2) {
        ASSERT_EQ(t.quadratic_character(a), r.quadratic_character(a));
      }
    }
  }
}

TEST(Field, AdditionIsCoefficientwise) {
  const Field f = Field::build(5, 3);
  for (Element a = 0; a < f.order(); a += 7)
    for (Element b = 0; b < f.order(); b += 11) {
      const auto da = f.digits(a), db = f.digits(b), ds = f.digits(f.add(a, b));
      for (std::size_t i = 0; i < 3; ++i) ASSERT_EQ(ds[i], (da[i] + db[i]) % 5);
    }
}

TEST(Field, FrobeniusIsAdditiveAndFixesPrimeField) {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 9}, {3, 5}, {5, 3}, {7, 3}}) {
    const Field f = Field::build(p, n);
    std::set<Element> fixed;
    for (Element a = 0; a < f.order(); ++a) {
      if (f.frobenius(a) == a) fixed.insert(a);
      for (Element b = 0; b < f.order(); b += 13) ASSERT_EQ(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
    }
    std::set<Element> prime_field;
    for (Element v = 0; v < p; ++v) prime_field.insert(v);
    EXPECT_EQ(fixed, prime_field);
  }
}

TEST(Field, TraceIsLinearAndBalanced) {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 9}, {3, 5}, {5, 3}, {7, 3}, {3, 2}}) {
    const Field f = Field::build(p, n);
    std::vector<std::uint64_t> fiber(p, 0);
    for (Element a = 0; a < f.order(); ++a) {
      const Element t = f.trace(a);
      ASSERT_LT(t, p);
      // Direct Frobenius sum as oracle.
      Element s = 0, y = a;
      for (std::uint32_t i = 0; i < n; ++i, y = f.pow(y, p)) s = f.add(s, y);
      ASSERT_EQ(t, s);
      ++fiber[t];
      const Element lambda = static_cast<Element>(a % p);
      ASSERT_EQ(f.trace(f.mul(lambda, a)), f.mul(lambda, t));
      ASSERT_EQ(f.trace(f.add(a, 1)), f.add(t, f.scalar(n)));
    }
    for (auto cnt : fiber) EXPECT_EQ(cnt, checked_pow(p, n - 1));
  }
}

TEST(Field, RelativeTraceLandsInSubfield) {
  const Field f = Field::build(2, 4);
  for (Element a = 0; a < 16; ++a) {
    const Element y = f.relative_trace(a, 2);
    EXPECT_EQ(f.pow(y, 4), y);
    EXPECT_EQ(f.relative_trace(a, 4), a);
  }
  EXPECT_EQ(f.relative_trace(0, 2), 0u);
  const Field g = Field::build(3, 6);
  for (Element a = 0; a < g.order(); a += 17) {
    EXPECT_EQ(g.pow(g.relative_trace(a, 2), 9), g.relative_trace(a, 2));
    // Transitivity: Tr^3_1(Tr^6_3(a)) = Tr_6(a), summing three Frobenius powers by hand.
    const Element y = g.relative_trace(a, 3);
    EXPECT_EQ(g.add(g.add(y, g.pow(y, 3)), g.pow(y, 9)), g.trace(a));
  }
}

TEST(Field, QuadraticCharacterIsMultiplicative) {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 3}, {5, 2}, {7, 2}, {3, 4}, {11, 1}}) {
    const Field f = Field::build(p, n);
    std::set<Element> squares;
    for (Element a = 1; a < f.order(); ++a) squares.insert(f.mul(a, a));
    EXPECT_EQ(squares.size(), (f.order() - 1) / 2);
    for (Element a = 1; a < f.order(); ++a) {
      ASSERT_EQ(f.quadratic_character(a), squares.count(a) ? 1 : -1);
      for (Element b = 1; b < f.order(); b += 5)
        ASSERT_EQ(f.quadratic_character(f.mul(a, b)), f.quadratic_character(a) * f.quadratic_character(b));
    }
  }
}

TEST(Field, LargeFieldWithoutTables) {
  // 3^14 = 4782969 exceeds the default table threshold.
  const Field f = Field::build(3, 14, std::nullopt, FieldOptions{std::uint64_t{1} << 24, kDefaultSizeLimit});
  EXPECT_FALSE(f.has_tables());
  EXPECT_EQ(f.pow(f.generator(), f.order() - 1), 1u);
  EXPECT_NE(f.pow(f.generator(), (f.order() - 1) / 2), 1u);
  const Element a = 1234567, b = 3456789;
  EXPECT_EQ(f.mul(f.div(a, b), b), a);
}

TEST(Numeric, Helpers) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(4294967291ULL));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(prime_divisors(360), (std::vector<std::uint64_t>{2, 3, 5}));
  EXPECT_EQ(checked_pow(3, 4), 81u);
  EXPECT_THROW(checked_pow(10, 30), std::overflow_error);
  EXPECT_EQ(two_adic_valuation(48), 4u);
  EXPECT_EQ(static_cast<std::uint64_t>(wide_gcd(wide_pow(7, 24) + 1, wide_pow(7, 24) - 1)), 2u);
}

TEST(Format, CoefficientsAndPolynomials) {
  EXPECT_EQ(parse_coefficients("2,1,1"), (Coefficients{2, 1, 1}));
  EXPECT_THROW(parse_coefficients("2,,1"), FieldError);
  EXPECT_THROW(parse_coefficients("a"), FieldError);
  EXPECT_EQ(format_coefficients({1, 1, 0, 1}), "1,1,0,1");
  EXPECT_EQ(format_polynomial({2, 1, 1}), "x^2 + x + 2");
  EXPECT_EQ(format_polynomial({1, 1, 0, 1}), "x^3 + x + 1");
}
