#include "pswaring/horace.hpp"

#include <algorithm>

#include "pswaring/parallel.hpp"

namespace pswaring {

namespace {

std::uint64_t stage_seed(std::uint64_t root, std::uint64_t tag) {
  return Rng::stream(root, tag).next();
}

struct PencilSplit {
  int dist;             // index of the P^1 carrying the divisor pencil
  int d_last;           // its degree
  long long head_prod;  // prod over the other factors of C(r_i + d_i, r_i)
  long long head_sum_r;
};

PencilSplit split_pencil(const Format& fmt) {
  if (fmt.factors() < 2)
    throw std::invalid_argument("horace: needs at least two factors");
  fmt.ncoeff();  // trips the dense-size guard before any counting below
  PencilSplit ps;
  ps.dist = fmt.original_last();
  if (fmt.r(ps.dist) != 1)
    throw std::invalid_argument("horace: the distinguished factor must be a P^1");
  ps.d_last = fmt.d(ps.dist);
  BigInt prod = 1;
  ps.head_sum_r = 0;
  for (int i = 0; i < fmt.factors(); ++i) {
    if (i == ps.dist) continue;
    prod *= binomial(fmt.r(i) + fmt.d(i), fmt.r(i));
    ps.head_sum_r += fmt.r(i);
  }
  ps.head_prod = prod.convert_to<long long>();
  return ps;
}

SysdimOptions sys_opt(const HoraceOptions& opt, std::uint64_t tag) {
  SysdimOptions s;
  s.trials = opt.trials;
  s.prime = opt.prime;
  s.fallback_prime = opt.fallback_prime;
  s.seed = stage_seed(opt.seed, tag);
  return s;
}

}  // namespace

const char* to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::certified: return "certified";
    case CertificateStatus::failed: return "failed";
    case CertificateStatus::partial: return "partial";
  }
  return "?";
}

HoraceBounds horace_bounds(const Format& fmt) {
  const PencilSplit ps = split_pencil(fmt);
  HoraceBounds b;
  b.h_max = ps.head_prod / (ps.head_sum_r + 1);
  b.l_max = ps.head_prod * (ps.d_last + 1) / (ps.head_sum_r + 2) - b.h_max;
  return b;
}

HoraceStep horace_step(const Format& fmt, int l, int h, const HoraceOptions& opt) {
  const PencilSplit ps = split_pencil(fmt);
  if (ps.d_last < 2) throw std::invalid_argument("horace_step: last-factor degree must be >= 2");
  const HoraceBounds bounds = horace_bounds(fmt);
  if (h < 0 || h > bounds.h_max)
    throw std::invalid_argument("horace_step: h outside the admissible bounds");
  if (l < 0 || l > bounds.l_max)
    throw std::invalid_argument("horace_step: l outside the admissible bounds");

  const Format head = fmt.without_factor(ps.dist);
  const Format fmt_a = fmt.with_degree_at(ps.dist, ps.d_last - 1);
  const Format fmt_c = fmt.with_degree_at(ps.dist, ps.d_last - 2);

  // A: one degree down, the l free double points impose independent conditions.
  Verdict a = sysdim(fmt_a, SchemeShape{l, 0, -1}, sys_opt(opt, 0xA));
  // B: the trace on D, h double points on the head product.
  Verdict b = sysdim(head, SchemeShape{h, 0, -1}, sys_opt(opt, 0xB));
  // C: two degrees down, dimension at most P d_last - (sum_r + 2) l - h.
  const long long c_bound =
      ps.head_prod * ps.d_last - (ps.head_sum_r + 2) * (long long)l - h;
  Verdict c = sysdim_at_most(fmt_c, SchemeShape{l, 0, -1}, c_bound, sys_opt(opt, 0xC));

  // Conclusion, cross-checked directly with the mixed scheme.
  Verdict conclusion =
      sysdim(fmt, SchemeShape{l, h, ps.dist}, sys_opt(opt, 0xD));

  HoraceStep step(fmt, std::move(a), std::move(b), std::move(c), std::move(conclusion));
  step.l = l;
  step.h = h;
  step.c_bound = c_bound;
  step.hypotheses_ok = step.hypothesis_a.is_certificate() && step.hypothesis_b.is_certificate() &&
                       step.hypothesis_c.is_certificate();
  if (!step.hypothesis_a.is_certificate())
    step.failed_hypothesis = "A";
  else if (!step.hypothesis_b.is_certificate())
    step.failed_hypothesis = "B";
  else if (!step.hypothesis_c.is_certificate())
    step.failed_hypothesis = "C";
  step.consistent = !step.hypotheses_ok || step.conclusion.is_certificate();
  return step;
}

Certificate certify_weakly(const Format& fmt, long long s, const HoraceOptions& opt) {
  const PencilSplit ps = split_pencil(fmt);
  for (int i = 0; i < fmt.factors(); ++i)
    if (i != ps.dist && fmt.d(i) < 2)
      throw std::invalid_argument("certify_weakly: head degrees must be >= 2");

  Certificate cert(fmt);
  cert.s = s;
  cert.schedule = weakly_schedule(fmt, s);
  if (!cert.schedule.degree_ok)
    throw std::invalid_argument("certify_weakly: needs last-factor degree >= t0 + 3");

  const long long t0 = cert.schedule.t0;
  const long long h0 = cert.schedule.h0;
  const int nleaves = int(t0) + 1;
  std::vector<std::optional<Verdict>> leaves(nleaves);

  const int pool = opt.jobs > 0 ? opt.jobs : default_jobs();
  run_indexed_jobs(nleaves, pool, [&](int idx) {
    const long long t = idx + 1;
    if (t <= t0) {
      // Degree d_last - t + 1 with s - t h0 free and h0 on-divisor points.
      const Format fmt_t = fmt.with_degree_at(ps.dist, ps.d_last - int(t) + 1);
      const SchemeShape shape{int(s - t * h0), int(h0), fmt_t.position_of(ps.dist)};
      leaves[idx] = sysdim(fmt_t, shape, sys_opt(opt, 0x100 + std::uint64_t(t)));
    } else {
      // Final leaf: degree d_last - t0, one free double point plus
      // s - t0 h0 - 1 on-divisor points.
      const Format fmt_f = fmt.with_degree_at(ps.dist, ps.d_last - int(t0));
      const int on_divisor = int(s - t0 * h0 - 1);
      const SchemeShape shape{1, on_divisor,
                              on_divisor > 0 ? fmt_f.position_of(ps.dist) : -1};
      leaves[idx] = sysdim(fmt_f, shape, sys_opt(opt, 0x100 + std::uint64_t(t)));
    }
  });

  int ok = 0;
  for (int i = 0; i < nleaves; ++i) {
    cert.leaves.push_back(*leaves[i]);
    if (leaves[i]->is_certificate()) {
      ++ok;
    } else if (cert.failing_t < 0) {
      cert.failing_t = i + 1;
    }
  }
  cert.status = ok == nleaves             ? CertificateStatus::certified
                : ok == 0                 ? CertificateStatus::failed
                                          : CertificateStatus::partial;
  return cert;
}

PipelineReport corollary_pipeline(const PerfectCase& pc, const PipelineOptions& opt) {
  const Format& fmt = pc.format;

  HoraceOptions horace_opt = opt.horace;
  horace_opt.seed = stage_seed(opt.seed, 1);
  SysdimOptions secant_opt = sys_opt(horace_opt, 0x5ec);

  PipelineReport report(pc, secant_dim(fmt, pc.k, secant_opt));
  report.nef_ok = nef_check(fmt);

  if (report.secant.defective) {
    report.hypotheses_verified = false;  // halted at the secant verdict
    return report;
  }

  WeakDefectOptions weak_opt = opt.weak;
  report.weak = check_weak_defectivity(fmt, int(pc.k), stage_seed(opt.seed, 2), weak_opt);

  bool cert_ok = true;
  if (fmt.factors() == 3) {
    HoraceOptions cert_opt = opt.horace;
    cert_opt.seed = stage_seed(opt.seed, 3);
    report.certificate = certify_weakly(fmt, pc.k, cert_opt);
    cert_ok = report.certificate->status == CertificateStatus::certified;
  }

  report.hypotheses_verified =
      report.nef_ok && !report.secant.defective && !report.weak->weakly_defective && cert_ok;
  return report;
}

}  // namespace pswaring
