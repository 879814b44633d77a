#include <doctest.h>

#include <random>

#include "a2torus/errors.hpp"
#include "a2torus/intmat.hpp"
#include "support/oracles.hpp"

using namespace a2t;

namespace {

oracle::M raw(const UniModularMatrix& m) { return {m.m00, m.m01, m.m10, m.m11}; }
UniModularMatrix cooked(const oracle::M& m) { return make_matrix(m[0], m[1], m[2], m[3]); }

UniModularMatrix random_special(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> u(-bound, bound);
  for (;;) {
    std::int64_t a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a * d - b * c == 1) return {a, b, c, d};
  }
}

}  // namespace

TEST_CASE("products and powers") {
  auto a2 = a2_matrix();
  CHECK(multiply(a2, a2) == UniModularMatrix{0, 1, -1, -1});
  CHECK(multiply(identity(), a2) == a2);
  CHECK(power(a2, 3) == identity());
  CHECK(multiply(a2, inverse(a2)) == identity());
  CHECK(raw(multiply(a2, normal_form(4))) == oracle::mul(raw(a2), raw(normal_form(4))));
}

TEST_CASE("make_matrix rejects non-unimodular entries") {
  CHECK_THROWS_AS(make_matrix(2, 0, 0, 1), DomainError);
  try {
    make_matrix(1, 1, 1, 1);
  } catch (const DomainError& e) {
    CHECK(e.code() == "NotUnimodular");
  }
  CHECK(make_matrix(0, 1, 1, 0).det() == -1);
}

TEST_CASE("orders agree with the power oracle") {
  CHECK(order(a2_matrix()) == 3);
  CHECK(order(identity()) == 1);
  CHECK_FALSE(order({2, 1, 1, 1}).has_value());
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    auto m = random_special(rng, 3);
    CHECK(order(m) == oracle::order(raw(m)));
  }
}

TEST_CASE("normal forms are the listed matrices and classify to themselves") {
  const char* names[] = {"A1", "A2", "A3", "A4", "A5", "A6", "A7"};
  for (int j = 1; j <= 7; ++j) {
    CHECK(raw(normal_form(j)) == oracle::normal(j));
    CHECK(class_name(classify_periodic(normal_form(j))) == names[j - 1]);
  }
  CHECK_THROWS_AS(normal_form(0), DomainError);
}

TEST_CASE("is_similar returns a valid conjugator") {
  auto n = UniModularMatrix{0, -1, 1, -1};
  auto b = is_similar(a2_matrix(), n);
  REQUIRE(b.has_value());
  CHECK(b->det() == 1);
  CHECK(multiply(multiply(*b, a2_matrix()), inverse(*b)) == n);
  CHECK(is_similar(a2_matrix(), a2_matrix()) == identity());
  CHECK_FALSE(is_similar(a2_matrix(), normal_form(1)).has_value());
}

TEST_CASE("the general policy merges the mutually inverse pair") {
  CHECK_FALSE(is_similar(normal_form(6), normal_form(7)).has_value());
  auto b = is_similar(normal_form(6), normal_form(7), ConjugatorPolicy::General);
  REQUIRE(b.has_value());
  CHECK(b->det() == -1);
  CHECK(oracle::similar(oracle::normal(6), oracle::normal(7), 2, {-1, 1}).has_value());
  CHECK_FALSE(oracle::similar(oracle::normal(6), oracle::normal(7), 2, {1}).has_value());
}

TEST_CASE("conjugates of every normal form classify back") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 60; ++t) {
    auto b = random_special(rng, 5);
    for (int j = 1; j <= 7; ++j) {
      auto m = multiply(multiply(b, normal_form(j)), inverse(b));
      CHECK(classify_periodic(m) == class_of_index(j));
      CHECK(m.trace() == normal_form(j).trace());
    }
  }
}

TEST_CASE("classification matches the bound-20 brute force on small matrices") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 12; ++t) {
    auto m = random_special(rng, 2);
    auto tag = classify_periodic(m);
    int expect = 0;
    for (int j = 1; j <= 7 && !expect; ++j)
      if (oracle::similar(oracle::normal(j), raw(m), 20)) expect = j;
    if (expect == 0)
      CHECK(tag == PeriodicClass::NotFiniteOrder);
    else
      CHECK(tag == class_of_index(expect));
  }
}

TEST_CASE("a found conjugator satisfies B N = M B with small entries") {
  auto c = classify(cooked({1, 1, -2, -1}));
  REQUIRE(c.conjugator.has_value());
  auto n = normal_form(static_cast<int>(c.tag));
  CHECK(multiply(*c.conjugator, n) == multiply(cooked({1, 1, -2, -1}), *c.conjugator));
}
