#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pswaring/horace.hpp"

using namespace pswaring;

TEST_CASE("induction bounds on the cube") {
  const Format fmt({1, 1, 1}, {3, 3, 3});
  const HoraceBounds b = horace_bounds(fmt);
  CHECK(b.h_max == 5);   // floor(16 / 3)
  CHECK(b.l_max == 11);  // floor(16 * 4 / 4) - 5
}

TEST_CASE("horace step on (3,3,3) with l=8, h=5") {
  HoraceOptions opt;
  opt.seed = 2025;
  const HoraceStep step = horace_step(Format({1, 1, 1}, {3, 3, 3}), 8, 5, opt);

  CHECK(step.hypothesis_a.is_certificate());
  CHECK(step.hypothesis_a.ncoeff == 48);  // degree (3,3,2)
  CHECK(step.hypothesis_a.rows == 32);

  CHECK(step.hypothesis_b.is_certificate());
  CHECK(step.hypothesis_b.ncoeff == 16);  // restriction to D: degree (3,3)
  CHECK(step.hypothesis_b.rows == 15);

  CHECK(step.c_bound == 48 - 32 - 5);
  CHECK(step.hypothesis_c.is_certificate());

  CHECK(step.hypotheses_ok);
  CHECK(step.conclusion.is_certificate());
  CHECK(step.conclusion.ncoeff == 64);
  CHECK(step.conclusion.rows == 52);
  CHECK(step.consistent);
}

TEST_CASE("degenerate steps: h = 0 and l = 0") {
  HoraceOptions opt;
  opt.seed = 17;

  // h = 0: pure degree drop; the conclusion has only free points.
  const HoraceStep pure = horace_step(Format({1, 1}, {3, 4}), 4, 0, opt);
  CHECK(pure.hypothesis_b.rows == 0);
  CHECK(pure.hypothesis_b.is_certificate());
  CHECK(pure.hypotheses_ok);
  CHECK(pure.consistent);

  // l = 0, h = 1: one double point on D always imposes independent conditions.
  const HoraceStep one = horace_step(Format({1, 1}, {3, 4}), 0, 1, opt);
  CHECK(one.hypothesis_b.rows == 1 + 1);  // value + one affine partial on P^1
  CHECK(one.hypotheses_ok);
  CHECK(one.consistent);

  CHECK_THROWS(horace_step(Format({1, 1}, {3, 4}), -1, 0, opt));
  CHECK_THROWS(horace_step(Format({1, 1}, {3, 4}), 0, 1000, opt));
}

TEST_CASE("property: whenever the hypotheses verify, so does the conclusion") {
  // Randomized (format, l, h) within the admissible bounds; every instance
  // with all three hypotheses expected must have an expected conclusion.
  Rng rng(909);
  int verified = 0, tried = 0;
  while (verified < 12 && tried < 60) {
    ++tried;
    const int n_head = 1 + int(rng.below(2));
    std::vector<int> r, d;
    for (int i = 0; i < n_head; ++i) {
      r.push_back(1 + int(rng.below(2)));
      d.push_back(2 + int(rng.below(3)));
    }
    r.push_back(1);
    d.push_back(2 + int(rng.below(4)));
    Format fmt(r, d);
    const HoraceBounds b = horace_bounds(fmt);
    const int h = int(rng.below(std::uint64_t(b.h_max + 1)));
    const int l = int(rng.below(std::uint64_t(b.l_max + 1)));

    HoraceOptions opt;
    opt.seed = rng.next();
    const HoraceStep step = horace_step(fmt, l, h, opt);
    if (!step.hypotheses_ok) continue;
    ++verified;
    CHECK(step.consistent);
    CHECK(step.conclusion.is_certificate());
  }
  CHECK(verified >= 12);
}

TEST_CASE("weakly certificate for the corollary-3 flagship case") {
  HoraceOptions opt;
  opt.seed = 31337;
  const Certificate cert = certify_weakly(Format({1, 1, 1}, {3, 3, 14}), 60, opt);
  CHECK(cert.schedule.h0 == 5);
  CHECK(cert.schedule.t0 == 11);
  CHECK(cert.leaves.size() == 12);
  CHECK(cert.status == CertificateStatus::certified);
  for (const auto& leaf : cert.leaves) CHECK(leaf.is_certificate());

  // Leaf count is t0 + 1 with the pipeline's s = k too.
  const Certificate small = certify_weakly(Format({1, 1, 1}, {3, 3, 14}), 59, opt);
  CHECK(small.schedule.t0 == 11);
  CHECK(small.leaves.size() == 12);
  CHECK(small.status == CertificateStatus::certified);
}

TEST_CASE("schedule collapse and threshold preconditions") {
  HoraceOptions opt;
  opt.seed = 5;

  // s <= h0: t0 = 0, a single final statement.
  const Certificate single = certify_weakly(Format({1, 1, 1}, {3, 3, 14}), 5, opt);
  CHECK(single.schedule.t0 == 0);
  CHECK(single.leaves.size() == 1);
  CHECK(single.status == CertificateStatus::certified);

  // d_last = t0 + 2 violates the threshold.
  CHECK_THROWS(certify_weakly(Format({1, 1, 1}, {3, 3, 7}), 30, opt));  // t0 = 5, needs d3 >= 8
}

TEST_CASE("certificate leaf assembly is identical across job counts") {
  HoraceOptions serial;
  serial.seed = 77;
  serial.jobs = 1;
  HoraceOptions wide = serial;
  wide.jobs = 4;
  const Certificate a = certify_weakly(Format({1, 1, 1}, {3, 3, 14}), 60, serial);
  const Certificate b = certify_weakly(Format({1, 1, 1}, {3, 3, 14}), 60, wide);
  REQUIRE(a.leaves.size() == b.leaves.size());
  CHECK(a.status == b.status);
  for (std::size_t i = 0; i < a.leaves.size(); ++i) {
    CHECK(a.leaves[i].rank == b.leaves[i].rank);
    CHECK(a.leaves[i].status == b.leaves[i].status);
  }
}

TEST_CASE("corollary pipeline on (4,5): all hypotheses verified") {
  PerfectCase pc{Format({1, 1}, {4, 5}), 9, PerfectCase::Nu::multiple};
  PipelineOptions opt;
  opt.seed = 11;
  const PipelineReport rep = corollary_pipeline(pc, opt);
  CHECK(rep.nef_ok);
  CHECK(!rep.secant.defective);
  REQUIRE(rep.weak.has_value());
  CHECK(!rep.weak->weakly_defective);
  CHECK(!rep.certificate.has_value());  // two factors: no degeneration needed
  CHECK(rep.hypotheses_verified);
}

TEST_CASE("corollary pipeline halts at a defective secant verdict") {
  PerfectCase pc{Format({2}, {2}), 1, PerfectCase::Nu::unknown};
  PipelineOptions opt;
  opt.seed = 23;
  const PipelineReport rep = corollary_pipeline(pc, opt);
  CHECK(rep.secant.defective);
  CHECK(!rep.weak.has_value());
  CHECK(!rep.hypotheses_verified);
}
