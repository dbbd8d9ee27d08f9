#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "pswaring/format.hpp"
#include "pswaring/horace.hpp"
#include "pswaring/interpolation.hpp"
#include "pswaring/multipoly.hpp"
#include "pswaring/tangency.hpp"
#include "pswaring/waring.hpp"

namespace pswaring {

using Json = nlohmann::ordered_json;

// Flags of one run, embedded verbatim in every report so a run can be
// reproduced from its output alone.
struct RunConfig {
  std::string command;
  std::uint64_t seed = 0;
  std::uint64_t prime = kDefaultPrime;
  int trials = 3;
  int jobs = 0;  // 0: hardware default
  Json args = Json::object();
};

Json to_json(const Format& f);
Json to_json(const WeaklySchedule& ws);
Json to_json(const PerfectCase& pc);
Json to_json(const Verdict& v);
Json to_json(const SecantVerdict& v);
Json to_json(const LocatedPoint& p);
Json to_json(const SingularityReport& r);
Json to_json(const HoraceStep& s);
Json to_json(const Certificate& c);
Json to_json(const PipelineReport& r);
Json to_json(const RankOneTerm& t, const Format& fmt);
Json to_json(const NuReport& r);
Json to_json(const RunConfig& c);

// Standard envelope: tool, version, config, report payload.
Json make_report(const RunConfig& config, Json payload);

// Serialize with the one fixed convention (2-space indent, trailing newline)
// so byte-identity is meaningful.
std::string dump_report(const Json& j);

// Tensor file: header {n, r, d, scalar_kind} plus the coefficient array in
// canonical basis order; complex entries as [re, im]. Round trips are
// byte-exact: dump(load(bytes)) == bytes.
std::string dump_tensor(const SectionC& s);
std::string dump_tensor(const SectionFp& s);
std::variant<SectionC, SectionFp> load_tensor(const std::string& text);

// CSV for the enumeration subcommand: n, r, d1..dn, k, ncoeff, assumption1_ok.
std::string enumeration_csv(const std::vector<PerfectCase>& cases);

}  // namespace pswaring
