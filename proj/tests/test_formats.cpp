#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pswaring/format.hpp"

using namespace pswaring;

namespace {

// Independent Pascal-recurrence oracle.
BigInt pascal(int a, int b) {
  if (b < 0 || b > a) return 0;
  std::vector<BigInt> row(a + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= a; ++i)
    for (int j = i; j >= 1; --j) row[j] += row[j - 1];
  return row[b];
}

// Count monomials of degree d in nvars variables by direct enumeration.
long long count_monomials(int nvars, int d) {
  if (nvars == 1) return 1;
  long long total = 0;
  for (int e = 0; e <= d; ++e) total += count_monomials(nvars - 1, d - e);
  return total;
}

}  // namespace

TEST_CASE("binomial matches the Pascal oracle") {
  CHECK(binomial(7, 2) == 21);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  for (int a = 0; a <= 40; ++a)
    for (int b = 0; b <= 40; ++b) CHECK(binomial(a, b) == pascal(a, b));
  // No silent overflow: this value needs 124 bits.
  CHECK(binomial(130, 65) % 1000003 == pascal(130, 65) % 1000003);
}

TEST_CASE("ncoeff counts the monomial basis") {
  CHECK(ncoeff(Format({2}, {5})) == 21);
  CHECK(ncoeff(Format({2}, {5})) == count_monomials(3, 5));
  CHECK(ncoeff(Format({1, 1}, {4, 5})) == 30);
  CHECK(ncoeff(Format({1}, {1})) == 2);
  CHECK(ncoeff(Format({1, 1, 1}, {3, 3, 14})) == 240);
}

TEST_CASE("format normalizes degrees and remembers the construction order") {
  Format f({1, 1}, {5, 4});
  CHECK(f.d() == std::vector<int>{4, 5});
  CHECK(f.original_last() == 0);  // the construction-last factor had degree 4

  Format g({1, 1, 1}, {3, 14, 3});
  CHECK(g.d() == std::vector<int>{3, 3, 14});
  CHECK(g.original_last() == 1);  // stable sort keeps the trailing degree-3 factor second

  Format h({1, 1, 1}, {14, 3, 3});
  CHECK(h.d() == std::vector<int>{3, 3, 14});
  CHECK(h.original_last() == 1);  // stable sort: the second degree-3 factor

  // Mixed factor dimensions: order is kept as given.
  Format m({2, 1}, {5, 3});
  CHECK(m.d() == std::vector<int>{5, 3});
}

TEST_CASE("format parse/print round trip") {
  Format f = Format::parse("r=1,1;d=4,5");
  CHECK(f.to_string() == "r=1,1;d=4,5");
  CHECK(Format::parse(" r = 2 ; d = 5 ").to_string() == "r=2;d=5");
  CHECK_THROWS(Format::parse("r=1,1"));
  CHECK_THROWS(Format::parse("d=4,5;r=1,1"));
  CHECK_THROWS(Format::parse("r=1,x;d=4,5"));
  CHECK_THROWS(Format::parse("r=1;d=0"));
}

TEST_CASE("perfect_k on the reference instances") {
  CHECK(perfect_k(Format({2}, {5})) == 6);          // 21 = 3*7
  CHECK(perfect_k(Format({1, 1}, {4, 5})) == 9);    // 30 = 3*10
  CHECK(!perfect_k(Format({1, 1}, {4, 4})));        // 25 not divisible by 3
  CHECK(perfect_k(Format({1, 1}, {5, 5})) == 11);   // 36 = 3*12
  CHECK(perfect_k(Format({1, 1, 1}, {3, 3, 14})) == 59);
  CHECK_THROWS(perfect_k(Format({2, 1}, {4, 5})));  // unequal r
  CHECK_THROWS(perfect_k(Format({1}, {5})));        // n r < 2
}

TEST_CASE("exact perfect-case identity holds on every enumerated case") {
  for (const auto& c : enumerate_corollary_two(30)) {
    CHECK(ncoeff(c.format) == BigInt(c.format.sum_r() + 1) * (c.k + 1));
    CHECK(c.nu_expected == PerfectCase::Nu::multiple);
  }
  for (const auto& c : enumerate_corollary_three(20))
    CHECK(ncoeff(c.format) == BigInt(c.format.sum_r() + 1) * (c.k + 1));
}

TEST_CASE("corollary-2 enumeration against the exhaustive oracle") {
  auto got = enumerate_corollary_two(5);
  REQUIRE(got.size() == 2);
  CHECK(got[0].format.d() == std::vector<int>{4, 5});
  CHECK(got[0].k == 9);
  CHECK(got[1].format.d() == std::vector<int>{5, 5});
  CHECK(got[1].k == 11);

  CHECK(enumerate_corollary_two(4).empty());

  bool has_4_8 = false;
  for (const auto& c : enumerate_corollary_two(8))
    if (c.format.d() == std::vector<int>{4, 8}) {
      has_4_8 = true;
      CHECK(c.k == 14);
    }
  CHECK(has_4_8);

  // Independent double-loop oracle up to dmax = 30.
  const int dmax = 30;
  std::vector<std::pair<std::pair<int, int>, long long>> oracle;
  for (int d1 = 4; d1 <= dmax; ++d1)
    for (int d2 = d1; d2 <= dmax; ++d2) {
      long long p = (long long)(d1 + 1) * (d2 + 1);
      if (p % 3 == 0 && p / 3 >= 2) oracle.push_back({{d1, d2}, p / 3 - 1});
    }
  auto cases = enumerate_corollary_two(dmax);
  REQUIRE(cases.size() == oracle.size());
  for (std::size_t i = 0; i < cases.size(); ++i) {
    CHECK(cases[i].format.d() == std::vector<int>({oracle[i].first.first, oracle[i].first.second}));
    CHECK(cases[i].k == oracle[i].second);
  }
}

TEST_CASE("corollary-3 enumeration: membership, exclusions, oracle") {
  bool has_3_3_14 = false;
  for (const auto& c : enumerate_corollary_three(14))
    if (c.format.d() == std::vector<int>{3, 3, 14}) {
      has_3_3_14 = true;
      CHECK(c.k == 59);  // 4*4*15 = 240 = 4*60, and 60 <= 12*floor(16/3)
    }
  CHECK(has_3_3_14);

  CHECK(enumerate_corollary_three(3).empty());  // (3,3,3): k+1 = 16 > 1*5

  for (const auto& c : enumerate_corollary_three(13))
    CHECK(c.format.d() != std::vector<int>{3, 3, 13});  // 56 > 11*5

  // Independent triple-loop oracle up to dmax = 30.
  const int dmax = 30;
  long long count = 0;
  for (int d1 = 3; d1 <= dmax; ++d1)
    for (int d2 = d1; d2 <= dmax; ++d2)
      for (int d3 = d2; d3 <= dmax; ++d3) {
        long long p = (long long)(d1 + 1) * (d2 + 1) * (d3 + 1);
        if (p % 4 != 0 || p / 4 < 2) continue;
        if (p / 4 > (long long)(d3 - 2) * (((d1 + 1) * (d2 + 1)) / 3)) continue;
        ++count;
      }
  CHECK((long long)enumerate_corollary_three(dmax).size() == count);
}

TEST_CASE("nef inequality holds once degrees are normalized") {
  CHECK(nef_check(Format({1, 1}, {4, 5})));
  CHECK(nef_check(Format({2}, {5})));
  CHECK(nef_check(Format({1, 1}, {5, 4})));  // normalized to (4,5) on construction
  for (int d1 = 1; d1 <= 6; ++d1)
    for (int d2 = d1; d2 <= 8; ++d2) CHECK(nef_check(Format({2, 2}, {d1, d2})));
}

TEST_CASE("weakly schedule arithmetic") {
  Format f({1, 1, 1}, {3, 3, 14});
  auto ws = weakly_schedule(f, 60);
  CHECK(ws.h0 == 5);  // floor(16/3)
  CHECK(ws.t0 == 11);
  CHECK(60 - ws.t0 * ws.h0 == 5);
  CHECK(ws.degree_ok);  // 14 >= 11 + 3

  // s = h0 sits at the boundary: t0 = 0.
  auto boundary = weakly_schedule(f, 5);
  CHECK(boundary.t0 == 0);

  // A last-factor degree of t0 + 2 fails the threshold.
  Format g({1, 1, 1}, {3, 3, 7});
  auto tight = weakly_schedule(g, 30);  // t0 = floor(29/5) = 5, needs d3 >= 8
  CHECK(tight.t0 == 5);
  CHECK(!tight.degree_ok);

  // Defining inequality 1 <= s - t0 h0 <= h0 on a spread of inputs.
  for (long long s = 1; s <= 60; ++s) {
    auto w = weakly_schedule(f, s);
    CHECK(s - w.t0 * w.h0 >= 1);
    CHECK(s - w.t0 * w.h0 <= w.h0);
  }
  CHECK_THROWS(weakly_schedule(f, 61));  // beyond floor(ncoeff / (sum_r + 2))
  CHECK_THROWS(weakly_schedule(f, 0));
}
