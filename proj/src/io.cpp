#include "pswaring/io.hpp"

#include "pswaring/version.hpp"

namespace pswaring {

namespace {

Json complex_pair(const Cplx& z) { return Json::array({z.real(), z.imag()}); }

Cplx pair_complex(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

const char* nu_name(PerfectCase::Nu nu) {
  switch (nu) {
    case PerfectCase::Nu::unique: return "unique";
    case PerfectCase::Nu::multiple: return "multiple";
    case PerfectCase::Nu::unknown: return "unknown";
  }
  return "?";
}

}  // namespace

Json to_json(const Format& f) {
  return Json{{"spec", f.to_string()}, {"n", f.factors()}, {"r", f.r()}, {"d", f.d()},
              {"ncoeff", f.ncoeff()}};
}

Json to_json(const WeaklySchedule& ws) {
  return Json{{"s", ws.s}, {"h0", ws.h0}, {"t0", ws.t0}, {"degree_ok", ws.degree_ok}};
}

Json to_json(const PerfectCase& pc) {
  return Json{{"format", to_json(pc.format)}, {"k", pc.k}, {"nu_expected", nu_name(pc.nu_expected)}};
}

Json to_json(const Verdict& v) {
  Json scheme{{"free_double_points", v.shape.free_points},
              {"divisor_double_points", v.shape.divisor_points}};
  if (v.shape.divisor_points > 0) scheme["divisor_factor"] = v.shape.divisor_factor;
  Json j{{"format", to_json(v.format)},
         {"scheme", std::move(scheme)},
         {"ncoeff", v.ncoeff},
         {"rows", v.rows},
         {"rank", v.rank},
         {"expected_dim", v.expected_dim},
         {"actual_dim", v.actual_dim},
         {"status", to_string(v.status)},
         {"trials", v.trials_used},
         {"scalar_kind", "fp"},
         {"primes", v.primes_used}};
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json to_json(const SecantVerdict& v) {
  Json j = to_json(v.verdict);
  j["k"] = v.k;
  j["expected_rank"] = v.expected_rank;
  j["defective"] = v.defective;
  return j;
}

Json to_json(const LocatedPoint& p) {
  Json factors = Json::array();
  for (const auto& hom : p.hom) {
    Json coords = Json::array();
    for (int i = 0; i < hom.size(); ++i) coords.push_back(complex_pair(hom[i]));
    factors.push_back(std::move(coords));
  }
  return Json{{"homogeneous", std::move(factors)}};
}

Json to_json(const SingularityReport& r) {
  Json extras = Json::array();
  for (const auto& p : r.extra_singularities) extras.push_back(to_json(p));
  Json imposed = Json::array();
  for (const auto& p : r.imposed_points) imposed.push_back(to_json(p));
  return Json{{"format", to_json(r.format)},
              {"npoints", r.npoints},
              {"seed", r.seed},
              {"kernel_dim", r.kernel_dim},
              {"scalar_kind", "complex"},
              {"imposed_points", std::move(imposed)},
              {"hessian_ok", r.hessian_ok},
              {"extra_singularities", std::move(extras)},
              {"positive_dimensional", r.positive_dimensional},
              {"certification", r.certification == Certification::certified ? "certified" : "heuristic"},
              {"method", r.method},
              {"ordinary_double_points_only", ordinary_double_points_only(r)},
              {"weakly_defective", r.weakly_defective}};
}

Json to_json(const HoraceStep& s) {
  Json c = to_json(s.hypothesis_c);
  c["bound"] = s.c_bound;
  c["bound_satisfied"] = s.hypothesis_c.is_certificate();
  Json j{{"format", to_json(s.format)},
         {"l", s.l},
         {"h", s.h},
         {"hypotheses",
          Json{{"A", to_json(s.hypothesis_a)}, {"B", to_json(s.hypothesis_b)}, {"C", std::move(c)}}},
         {"conclusion", to_json(s.conclusion)},
         {"hypotheses_ok", s.hypotheses_ok},
         {"consistent", s.consistent}};
  if (!s.failed_hypothesis.empty()) j["failed_hypothesis"] = s.failed_hypothesis;
  return j;
}

Json to_json(const Certificate& c) {
  Json leaves = Json::array();
  for (std::size_t i = 0; i < c.leaves.size(); ++i) {
    Json leaf = to_json(c.leaves[i]);
    leaf["t"] = (long long)(i + 1) <= c.schedule.t0 ? Json(i + 1) : Json("final");
    leaves.push_back(std::move(leaf));
  }
  Json j{{"format", to_json(c.format)},
         {"s", c.s},
         {"schedule", to_json(c.schedule)},
         {"leaves", std::move(leaves)},
         {"status", to_string(c.status)}};
  if (c.failing_t >= 0) j["failing_t"] = c.failing_t;
  return j;
}

Json to_json(const PipelineReport& r) {
  Json j{{"case", to_json(r.perfect_case)},
         {"nef_ok", r.nef_ok},
         {"secant", to_json(r.secant)},
         {"weak_defectivity", r.weak ? to_json(*r.weak) : Json(nullptr)},
         {"certificate", r.certificate ? to_json(*r.certificate) : Json(nullptr)},
         {"hypotheses_verified", r.hypotheses_verified}};
  j["verdict"] = r.hypotheses_verified
                     ? "multiplicity hypotheses verified (probabilistic)"
                     : "hypotheses not verified";
  return j;
}

Json to_json(const RankOneTerm& t, const Format& fmt) {
  Json linforms = Json::array();
  for (int i = 0; i < fmt.factors(); ++i) {
    Json l = Json::array();
    for (int j = 0; j < t.linforms[i].size(); ++j) l.push_back(complex_pair(t.linforms[i][j]));
    linforms.push_back(std::move(l));
  }
  return Json{{"scalar", complex_pair(t.scalar)}, {"linforms", std::move(linforms)}};
}

Json to_json(const NuReport& r) {
  Json reps = Json::array();
  for (const auto& dec : r.representatives) {
    Json terms = Json::array();
    for (const auto& t : dec.terms) terms.push_back(to_json(t, r.format));
    reps.push_back(Json{{"residual", dec.residual}, {"terms", std::move(terms)}});
  }
  Json j{{"format", to_json(r.format)},
         {"k", r.k},
         {"nstarts", r.nstarts},
         {"nconverged", r.nconverged},
         {"success_rate", r.success_rate},
         {"inconclusive", r.inconclusive}};
  if (!r.inconclusive) {
    j["nu_est"] = r.nu_est;
    j["nu_statement"] = "nu >= " + std::to_string(r.nu_est) + " (multi-start lower bound)";
    j["cluster_sizes"] = r.cluster_sizes;
    j["residuals"] =
        Json{{"min", r.residual_min}, {"median", r.residual_median}, {"max", r.residual_max}};
    j["cluster_tol"] = r.cluster_tol;
    j["sweep"] = Json{{"loose", Json{{"tol", r.cluster_tol * 10}, {"nu_est", r.nu_at_loose}}},
                      {"tight", Json{{"tol", r.cluster_tol / 10}, {"nu_est", r.nu_at_tight}}}};
    j["representatives"] = std::move(reps);
  }
  return j;
}

Json to_json(const RunConfig& c) {
  return Json{{"command", c.command}, {"seed", c.seed},   {"prime", c.prime},
              {"trials", c.trials},   {"jobs", c.jobs},   {"args", c.args}};
}

Json make_report(const RunConfig& config, Json payload) {
  return Json{{"tool", "pswaring"},
              {"version", kVersion},
              {"config", to_json(config)},
              {"report", std::move(payload)}};
}

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

namespace {

Json tensor_header(const Format& f, const char* kind) {
  return Json{{"n", f.factors()}, {"r", f.r()}, {"d", f.d()}, {"scalar_kind", kind}};
}

Format tensor_format(const Json& j) {
  return Format(j.at("r").get<std::vector<int>>(), j.at("d").get<std::vector<int>>());
}

}  // namespace

std::string dump_tensor(const SectionC& s) {
  Json t = tensor_header(s.format, "complex");
  Json coeffs = Json::array();
  for (int i = 0; i < s.coeffs.size(); ++i) coeffs.push_back(complex_pair(s.coeffs[i]));
  t["coeffs"] = std::move(coeffs);
  return dump_report(Json{{"tensor", std::move(t)}});
}

std::string dump_tensor(const SectionFp& s) {
  Json t = tensor_header(s.format, "fp");
  t["prime"] = s.prime;
  t["coeffs"] = s.coeffs;
  return dump_report(Json{{"tensor", std::move(t)}});
}

std::variant<SectionC, SectionFp> load_tensor(const std::string& text) {
  const Json root = Json::parse(text);
  const Json& t = root.at("tensor");
  Format fmt = tensor_format(t);
  const std::string kind = t.at("scalar_kind").get<std::string>();
  const Json& coeffs = t.at("coeffs");
  if ((long long)coeffs.size() != fmt.ncoeff())
    throw std::invalid_argument("tensor file: coefficient count does not match the format");
  if (kind == "complex") {
    SectionC s{fmt, Eigen::VectorXcd(fmt.ncoeff())};
    for (int i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] = pair_complex(coeffs.at(i));
    return s;
  }
  if (kind == "fp") {
    SectionFp s{fmt, t.at("prime").get<std::uint64_t>(),
                coeffs.get<std::vector<std::uint32_t>>()};
    return s;
  }
  throw std::invalid_argument("tensor file: unknown scalar kind '" + kind + "'");
}

std::string enumeration_csv(const std::vector<PerfectCase>& cases) {
  const int n = cases.empty() ? 0 : cases.front().format.factors();
  std::string out = "n,r";
  for (int i = 1; i <= n; ++i) out += ",d" + std::to_string(i);
  if (n == 0) out += ",d...";
  out += ",k,ncoeff,assumption1_ok\n";
  for (const auto& c : cases) {
    out += std::to_string(c.format.factors()) + "," + std::to_string(c.format.r(0));
    for (int i = 0; i < c.format.factors(); ++i) out += "," + std::to_string(c.format.d(i));
    out += "," + std::to_string(c.k);
    out += "," + ncoeff(c.format).convert_to<std::string>();
    // Corollary-2 rows carry no extra assumption; three-factor rows passed
    // assumption (1) to be enumerated at all.
    out += ",true\n";
  }
  return out;
}

}  // namespace pswaring
