#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "fqinc/ffield.hpp"
#include "support.hpp"

using namespace fqinc;

namespace {

// Slow polynomial arithmetic over GF(p), kept apart from the table code.
using Poly = std::vector<std::uint32_t>;

Poly decode(std::uint32_t index, std::uint32_t p, std::uint32_t n) {
  Poly c(n);
  for (auto& v : c) {
    v = index % p;
    index /= p;
  }
  return c;
}

std::uint32_t encode(const Poly& c, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return v;
}

// Remainder of a modulo the monic polynomial m.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  const std::size_t n = m.size() - 1;
  for (std::size_t d = a.size(); d-- > n;) {
    const std::uint32_t lead = a[d] % p;
    if (lead == 0) continue;
    for (std::size_t i = 0; i <= n; ++i) a[d - n + i] = (a[d - n + i] + p * p - lead * m[i] % p) % p;
  }
  a.resize(std::min(a.size(), n));
  return a;
}

std::uint32_t slow_mul(std::uint32_t x, std::uint32_t y, const FieldSpec& s) {
  const Poly a = decode(x, s.p, s.n);
  const Poly b = decode(y, s.p, s.n);
  Poly prod(2 * s.n, 0);
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = 0; j < s.n; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % s.p;
  if (s.n == 1) return prod[0];
  Poly r = poly_mod(prod, s.modulus, s.p);
  r.resize(s.n, 0);
  return encode(r, s.p);
}

std::uint32_t slow_add(std::uint32_t x, std::uint32_t y, const FieldSpec& s) {
  Poly a = decode(x, s.p, s.n);
  const Poly b = decode(y, s.p, s.n);
  for (std::size_t i = 0; i < s.n; ++i) a[i] = (a[i] + b[i]) % s.p;
  return encode(a, s.p);
}

// True iff some monic polynomial of degree 1..n/2 divides f.
bool has_factor(const Poly& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  for (std::size_t d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g = decode(static_cast<std::uint32_t>(idx), p, static_cast<std::uint32_t>(d));
      g.push_back(1);
      Poly r = poly_mod(f, g, p);
      bool zero = true;
      for (auto v : r) zero = zero && v == 0;
      if (zero) return true;
    }
  }
  return false;
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kFields{
    {2, 1}, {3, 1}, {5, 1}, {7, 1}, {13, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {7, 2}, {3, 4}};

}  // namespace

TEST(Field, PrimeFieldBasics) {
  const Field f = make_field(3, 1);
  EXPECT_EQ(f.q(), 3u);
  EXPECT_EQ(f.spec().q_mod4, 3u);
  EXPECT_EQ(f.spec().modulus, (Poly{0, 1}));
  const Field f8 = make_field(2, 3);
  EXPECT_EQ(f8.q(), 8u);
  EXPECT_EQ(f8.spec().q_mod4, 0u);
}

TEST(Field, NineUsesXSquaredPlusOne) {
  const Field f = make_field(3, 2);
  EXPECT_EQ(f.q(), 9u);
  EXPECT_EQ(f.spec().modulus, (Poly{1, 0, 1}));
}

TEST(Field, ModulusIsSmallestIrreducible) {
  for (auto [p, n] : kFields) {
    if (n == 1) continue;
    const Field f = make_field(p, n);
    const Poly& m = f.spec().modulus;
    ASSERT_EQ(m.size(), n + 1);
    EXPECT_EQ(m[n], 1u);
    EXPECT_FALSE(has_factor(m, p)) << "p=" << p << " n=" << n;
    // Every candidate that sorts earlier (c_0 most significant) is reducible.
    std::uint32_t q = f.q();
    for (std::uint32_t idx = 0; idx < q; ++idx) {
      Poly cand(n + 1);
      std::uint32_t rest = idx;
      for (std::uint32_t j = n; j-- > 0;) {
        cand[j] = rest % p;
        rest /= p;
      }
      cand[n] = 1;
      if (cand == m) break;
      EXPECT_TRUE(has_factor(cand, p)) << "earlier irreducible for p=" << p << " n=" << n;
    }
  }
}

TEST(Field, TablesMatchPolynomialOracle) {
  for (auto [p, n] : kFields) {
    const Field f = make_field(p, n);
    const auto& s = f.spec();
    const std::uint32_t q = f.q();
    const std::uint32_t step = q > 40 ? 7 : 1;
    for (std::uint32_t a = 0; a < q; a += step) {
      for (std::uint32_t b = 0; b < q; b += step) {
        ASSERT_EQ(f.mul(Elem{a}, Elem{b}).index, slow_mul(a, b, s)) << "q=" << q << " " << a << "*" << b;
        ASSERT_EQ(f.add(Elem{a}, Elem{b}).index, slow_add(a, b, s)) << "q=" << q << " " << a << "+" << b;
      }
    }
  }
}

TEST(Field, Axioms) {
  std::mt19937_64 rng(7);
  for (auto [p, n] : kFields) {
    const Field f = make_field(p, n);
    std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
    for (int i = 0; i < 300; ++i) {
      const Elem a{pick(rng)}, b{pick(rng)}, c{pick(rng)};
      EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      EXPECT_EQ(f.add(a, f.neg(a)), Elem{0});
      EXPECT_EQ(f.sub(f.add(a, b), b), a);
      if (a.index != 0) {
        EXPECT_EQ(f.mul(a, f.inv(a)), Elem{1});
        EXPECT_EQ(f.pow(a, f.q() - 1), Elem{1});
        EXPECT_EQ(f.div(f.mul(a, b), a), b);
      }
    }
  }
}

TEST(Field, GeneratorIsPrimitive) {
  for (auto [p, n] : kFields) {
    const Field f = make_field(p, n);
    std::vector<bool> seen(f.q(), false);
    Elem g = Elem{1};
    for (std::uint32_t i = 0; i + 1 < f.q(); ++i) {
      EXPECT_FALSE(seen[g.index]);
      seen[g.index] = true;
      g = f.mul(g, f.generator());
    }
    EXPECT_EQ(g, Elem{1});
  }
}

TEST(Field, IntegersAndSquares) {
  const Field f = make_field(7, 1);
  EXPECT_EQ(f.from_int(-1), f.neg(Elem{1}));
  EXPECT_EQ(f.from_int(9), Elem{2});
  for (auto [p, n] : kFields) {
    const Field g = make_field(p, n);
    std::size_t squares = 0;
    for (auto e : g.elements()) squares += g.is_square(e) ? 1 : 0;
    EXPECT_EQ(squares, p == 2 ? g.q() : (g.q() + 1) / 2);
  }
}

TEST(Field, DigitsRoundTrip) {
  const Field f = make_field(3, 3);
  for (auto e : f.elements()) EXPECT_EQ(encode(f.digits(e), 3), e.index);
}

TEST(Field, Errors) {
  EXPECT_FQ_ERROR(make_field(4, 1), ErrorCode::NotPrime);
  EXPECT_FQ_ERROR(make_field(1, 1), ErrorCode::NotPrime);
  EXPECT_FQ_ERROR(make_field(2, 5), ErrorCode::DegreeOutOfRange);
  EXPECT_FQ_ERROR(make_field(2, 0), ErrorCode::DegreeOutOfRange);
  EXPECT_FQ_ERROR(make_field(1031, 2), ErrorCode::DegreeOutOfRange);
  EXPECT_FQ_ERROR(make_field_of_order(6), ErrorCode::NotPrime);
  EXPECT_FQ_ERROR(make_field(5, 1).inv(Elem{0}), ErrorCode::DivisionByZero);
}

TEST(Field, OrderSplit) {
  EXPECT_EQ(prime_power_split(9), (std::pair<std::uint32_t, std::uint32_t>{3, 2}));
  EXPECT_EQ(prime_power_split(12), (std::pair<std::uint32_t, std::uint32_t>{0, 0}));
  EXPECT_EQ(make_field_of_order(16).spec().n, 4u);
}
