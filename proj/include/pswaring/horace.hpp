#pragma once

#include <optional>
#include <vector>

#include "pswaring/format.hpp"
#include "pswaring/interpolation.hpp"
#include "pswaring/tangency.hpp"

namespace pswaring {

// One Horace induction step on P^{r_1} x ... x P^{r_n} x P^1 with l free
// double points and h double points on a fiber D of the last P^1. Three
// hypotheses are discharged by rank computations:
//   A: degree (d_1..d_n, d_last - 1), l double points, expected dimension;
//   B: restriction to D (the first n factors), h double points, expected;
//   C: degree (d_1..d_n, d_last - 2), l double points, dimension at most
//      P * d_last - (sum_r + 2) l - h.
// When they hold, the mixed system in full degree has the expected dimension;
// the conclusion is cross-checked directly anyway.
struct HoraceStep {
  explicit HoraceStep(Format f, Verdict a, Verdict b, Verdict c, Verdict d)
      : format(std::move(f)), hypothesis_a(std::move(a)), hypothesis_b(std::move(b)),
        hypothesis_c(std::move(c)), conclusion(std::move(d)) {}

  Format format;
  int l = 0, h = 0;
  Verdict hypothesis_a;
  Verdict hypothesis_b;
  Verdict hypothesis_c;  // status expected <=> the dimension bound holds
  long long c_bound = 0;
  Verdict conclusion;
  bool hypotheses_ok = false;
  // The induction argument makes the conclusion redundant once the hypotheses
  // hold; a false value here is an arithmetic fault, asserted by tests.
  bool consistent = true;
  std::string failed_hypothesis;  // "", "A", "B", "C"
};

struct HoraceOptions {
  int trials = 3;
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t fallback_prime = kFallbackPrime;
  std::uint64_t seed = 0;
  int jobs = 0;
};

// Admissible ranges for l and h on this format (induction bounds).
struct HoraceBounds {
  long long h_max = 0;
  long long l_max = 0;
};
HoraceBounds horace_bounds(const Format& fmt);

HoraceStep horace_step(const Format& fmt, int l, int h, const HoraceOptions& opt);

// Degeneration certificate for the contact-divisor statement: the t = 1..t0
// expected-dimension leaves plus the final leaf with one free double point.
enum class CertificateStatus { certified, failed, partial };

struct Certificate {
  explicit Certificate(Format f) : format(std::move(f)) {}

  Format format;
  long long s = 0;
  WeaklySchedule schedule;
  std::vector<Verdict> leaves;  // index t-1 for t = 1..t0; last entry is final
  CertificateStatus status = CertificateStatus::failed;
  long long failing_t = -1;  // first failing leaf (1-based; t0+1 = final leaf)
};

const char* to_string(CertificateStatus s);

Certificate certify_weakly(const Format& fmt, long long s, const HoraceOptions& opt);

// End-to-end reproduction for one perfect case: non-defectivity via the
// secant rank, the contact-divisor singularity check, the nef inequality,
// and for three-factor cases the full degeneration certificate.
struct PipelineReport {
  PipelineReport(PerfectCase c, SecantVerdict sv)
      : perfect_case(std::move(c)), secant(std::move(sv)) {}

  PerfectCase perfect_case;
  bool nef_ok = false;
  SecantVerdict secant;
  // Empty when the pipeline halts at a defective secant verdict.
  std::optional<SingularityReport> weak;
  std::optional<Certificate> certificate;
  bool hypotheses_verified = false;  // all probabilistic checks passed
};

struct PipelineOptions {
  HoraceOptions horace;
  WeakDefectOptions weak;
  std::uint64_t seed = 0;
};

PipelineReport corollary_pipeline(const PerfectCase& pc, const PipelineOptions& opt);

}  // namespace pswaring
