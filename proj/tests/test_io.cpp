#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pswaring/io.hpp"
#include "pswaring/version.hpp"

using namespace pswaring;

TEST_CASE("complex tensor files round trip byte for byte") {
  Format fmt({1, 1}, {2, 3});
  Rng rng(404);
  Eigen::VectorXcd c(fmt.ncoeff());
  for (int i = 0; i < c.size(); ++i) c[i] = rng.unit_disc() * 1e3 + rng.gaussian() * 1e-7;
  const SectionC s{fmt, c};

  const std::string bytes = dump_tensor(s);
  const auto loaded = load_tensor(bytes);
  REQUIRE(std::holds_alternative<SectionC>(loaded));
  const SectionC& back = std::get<SectionC>(loaded);
  CHECK(back.format == fmt);
  CHECK((back.coeffs - s.coeffs).norm() == 0.0);
  CHECK(dump_tensor(back) == bytes);
}

TEST_CASE("fp tensor files round trip byte for byte") {
  Format fmt({2}, {2});
  FpField F;
  Rng rng(11);
  SectionFp s{fmt, F.prime(), {}};
  s.coeffs.resize(fmt.ncoeff());
  for (auto& v : s.coeffs) v = rng.field_nonzero(F.prime());

  const std::string bytes = dump_tensor(s);
  const auto loaded = load_tensor(bytes);
  REQUIRE(std::holds_alternative<SectionFp>(loaded));
  const SectionFp& back = std::get<SectionFp>(loaded);
  CHECK(back.prime == s.prime);
  CHECK(back.coeffs == s.coeffs);
  CHECK(dump_tensor(back) == bytes);
}

TEST_CASE("tensor file validation") {
  CHECK_THROWS(load_tensor("{}"));
  CHECK_THROWS(load_tensor(
      R"({"tensor":{"n":1,"r":[1],"d":[2],"scalar_kind":"complex","coeffs":[[1,0]]}})"));
  CHECK_THROWS(
      load_tensor(R"({"tensor":{"n":1,"r":[1],"d":[1],"scalar_kind":"what","coeffs":[1,2]}})"));
}

TEST_CASE("enumeration csv layout") {
  const auto cases = enumerate_corollary_two(5);
  CHECK(enumeration_csv(cases) ==
        "n,r,d1,d2,k,ncoeff,assumption1_ok\n"
        "2,1,4,5,9,30,true\n"
        "2,1,5,5,11,36,true\n");
  const auto c3 = enumerate_corollary_three(14);
  const std::string csv3 = enumeration_csv(c3);
  CHECK(csv3.rfind("n,r,d1,d2,d3,k,ncoeff,assumption1_ok\n", 0) == 0);
  CHECK(csv3.find("3,1,3,3,14,59,240,true\n") != std::string::npos);
}

TEST_CASE("verdict json carries the typed fields") {
  SysdimOptions opt;
  opt.seed = 4;
  const Verdict v = sysdim(Format({2}, {2}), SchemeShape{2, 0, -1}, opt);
  const Json j = to_json(v);
  CHECK(j.at("status") == "deficient");
  CHECK(j.at("expected_dim") == 0);
  CHECK(j.at("actual_dim") == 1);
  CHECK(j.at("scalar_kind") == "fp");
  CHECK(j.at("primes").size() == 2);
  CHECK(j.at("format").at("spec") == "r=2;d=2");
  CHECK(j.at("trials") == 3);
}

TEST_CASE("reports are byte-identical across runs and job counts") {
  // The payload (verdicts, certificates) may not depend on the pool size;
  // only the config block records --jobs.
  HoraceOptions serial;
  serial.seed = 99;
  serial.jobs = 1;
  HoraceOptions wide = serial;
  wide.jobs = 8;

  const Json a = to_json(certify_weakly(Format({1, 1, 1}, {3, 3, 14}), 60, serial));
  const Json b = to_json(certify_weakly(Format({1, 1, 1}, {3, 3, 14}), 60, wide));
  CHECK(a.dump() == b.dump());

  const Json c = to_json(certify_weakly(Format({1, 1, 1}, {3, 3, 14}), 60, serial));
  CHECK(a.dump() == c.dump());

  FitOptions fit_opt;
  const Json n1 = to_json(nu_experiment(Format({2}, {5}), 6, 12, 5, fit_opt, 1e-4, 1));
  const Json n8 = to_json(nu_experiment(Format({2}, {5}), 6, 12, 5, fit_opt, 1e-4, 8));
  CHECK(n1.dump() == n8.dump());
}

TEST_CASE("report envelope embeds the audit trail") {
  RunConfig config;
  config.command = "defect";
  config.seed = 42;
  config.prime = kDefaultPrime;
  config.trials = 3;
  config.jobs = 2;
  config.args = Json{{"format", "r=1,1;d=4,5"}, {"k", 9}};
  const Json rep = make_report(config, Json{{"ok", true}});
  CHECK(rep.at("tool") == "pswaring");
  CHECK(rep.at("version") == std::string(kVersion));
  CHECK(rep.at("config").at("seed") == 42);
  CHECK(rep.at("config").at("prime") == kDefaultPrime);
  CHECK(rep.at("config").at("args").at("k") == 9);
  CHECK(rep.at("report").at("ok") == true);
}
