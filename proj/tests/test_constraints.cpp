#include <doctest.h>

#include "a2torus/constraints.hpp"
#include "a2torus/errors.hpp"
#include "support/oracles.hpp"

using namespace a2t;

TEST_CASE("model counts") {
  CHECK(check_lefschetz_hopf({1, 3, 2}).pass);
  CHECK(check_lefschetz_hopf({3, 6, 3}).pass);
  auto v = check_lefschetz_hopf({1, 1, 1});
  CHECK_FALSE(v.pass);
  CHECK(v.violated == 2);
  CHECK_FALSE(v.message.empty());
  auto w = check_lefschetz_hopf({0, 1, 2});
  CHECK_FALSE(w.pass);
  CHECK(w.violated == 1);
}

TEST_CASE("minimal counts per component") {
  CHECK(minimal_counts(0) == MorseCounts{3, 6, 3});
  CHECK(minimal_counts(1) == MorseCounts{1, 3, 2});
  CHECK(minimal_counts(2) == MorseCounts{2, 3, 1});
  CHECK(minimal_counts(3) == MorseCounts{3, 6, 3});
  for (int i = 0; i < 4; ++i) CHECK(check_lefschetz_hopf(minimal_counts(i)).pass);
}

TEST_CASE("verdicts match the relation oracle on a box of counts") {
  for (int c0 = 0; c0 <= 8; ++c0)
    for (int c1 = 0; c1 <= 12; ++c1)
      for (int c2 = 0; c2 <= 8; ++c2) {
        auto v = check_lefschetz_hopf({c0, c1, c2});
        int expect = oracle::first_violated(c0, c1, c2);
        CHECK(v.pass == (expect == 0));
        CHECK(v.violated == expect);
        if (v.pass) CHECK(c0 - c1 + c2 == torus_betti().euler());
      }
}

TEST_CASE("negative counts are rejected") {
  CHECK_THROWS_AS(check_lefschetz_hopf({-1, 0, 0}), a2t::DomainError);
  CHECK_THROWS_AS(minimal_counts(4), a2t::DomainError);
}
