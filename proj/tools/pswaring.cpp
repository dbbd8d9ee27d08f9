#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pswaring/io.hpp"
#include "pswaring/version.hpp"

using namespace pswaring;

namespace {

struct GlobalFlags {
  std::uint64_t seed = 0;
  std::uint64_t prime = kDefaultPrime;
  int trials = 3;
  int jobs = 0;
  std::string out;
  bool as_json = false;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Reports go to --out when given; --json prints the document instead of the
// one-line summary.
void emit(const GlobalFlags& g, const Json& report, const std::string& summary) {
  const std::string text = dump_report(report);
  if (!g.out.empty()) write_file(g.out, text);
  if (g.as_json)
    std::cout << text;
  else
    std::cout << summary << (g.out.empty() ? "" : "  [report: " + g.out + "]") << "\n";
}

SysdimOptions sysdim_options(const GlobalFlags& g) {
  SysdimOptions o;
  o.trials = g.trials;
  o.prime = g.prime;
  o.fallback_prime = g.prime == kDefaultPrime ? kFallbackPrime : kDefaultPrime;
  o.seed = g.seed;
  return o;
}

HoraceOptions horace_options(const GlobalFlags& g) {
  HoraceOptions o;
  o.trials = g.trials;
  o.prime = g.prime;
  o.fallback_prime = g.prime == kDefaultPrime ? kFallbackPrime : kDefaultPrime;
  o.seed = g.seed;
  o.jobs = g.jobs;
  return o;
}

RunConfig run_config(const GlobalFlags& g, std::string command, Json args) {
  RunConfig c;
  c.command = std::move(command);
  c.seed = g.seed;
  c.prime = g.prime;
  c.trials = g.trials;
  c.jobs = g.jobs;
  c.args = std::move(args);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect-case enumeration, (weak-)defectivity verdicts, Horace certificates and "
               "multi-start decomposition counts for partially symmetric tensors"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config");
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--seed", g.seed, "root seed; every random draw derives from it")
      ->capture_default_str();
  app.add_option("--prime", g.prime, "modulus for exact rank computations")
      ->envname("PSWARING_PRIME")
      ->capture_default_str();
  app.add_option("--trials", g.trials, "fresh-point retries before declaring deficiency")
      ->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker pool size (0 = hardware)")->capture_default_str();
  app.add_option("--out", g.out, "write the JSON (or CSV) report to this path");
  app.add_flag("--json", g.as_json, "print the full JSON report to stdout");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "list perfect cases of one corollary family");
  int corollary = 2, dmax = 0;
  enumerate->add_option("--corollary", corollary, "2 or 3")->required()->check(CLI::IsMember({2, 3}));
  enumerate->add_option("--dmax", dmax, "largest degree to scan")->required();
  enumerate->fallthrough();

  // defect
  auto* defect = app.add_subcommand("defect", "Terracini secant-dimension verdict");
  std::string format_spec;
  long long k = -1;
  defect->add_option("--format", format_spec, "format, e.g. \"r=1,1;d=4,5\"")->required();
  defect->add_option("--k", k, "secant index")->required();
  defect->fallthrough();

  // weakdefect
  auto* weakdefect = app.add_subcommand("weakdefect", "contact-divisor singularity report");
  int npoints = 0, starts = 200;
  weakdefect->add_option("--format", format_spec)->required();
  weakdefect->add_option("--points", npoints, "number of imposed double points")->required();
  weakdefect->add_option("--starts", starts, "multi-start budget (heuristic path)")
      ->capture_default_str();
  weakdefect->fallthrough();

  // horace
  auto* horace = app.add_subcommand("horace", "one Horace induction step");
  horace->set_help_flag("--help", "print help");  // frees -h for the point count
  int l = 0, h = 0;
  horace->add_option("--format", format_spec)->required();
  horace->add_option("--l", l, "free double points")->required();
  horace->add_option("--h", h, "double points on the divisor")->required();
  horace->fallthrough();

  // certify
  auto* certify = app.add_subcommand("certify", "full degeneration certificate");
  long long s = 0;
  certify->add_option("--format", format_spec)->required();
  certify->add_option("--s", s, "number of double points")->required();
  certify->fallthrough();

  // decompose
  auto* decompose = app.add_subcommand("decompose", "multi-start decomposition count");
  int nstarts = 200;
  double cluster_tol = 1e-4;
  std::string target_path, save_target;
  decompose->add_option("--format", format_spec)->required();
  decompose->add_option("--k", k, "fit k+1 rank-one terms")->required();
  decompose->add_option("--starts", nstarts)->capture_default_str();
  decompose->add_option("--cluster-tol", cluster_tol)->capture_default_str();
  decompose->add_option("--target", target_path, "tensor file to decompose (default: synthesize)");
  decompose->add_option("--save-target", save_target, "write the target tensor file");
  decompose->fallthrough();

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "end-to-end check of one corollary case");
  std::string degree_list;
  pipeline->add_option("--corollary", corollary, "2 or 3")->required()->check(CLI::IsMember({2, 3}));
  pipeline->add_option("--d", degree_list, "degrees, e.g. \"4,5\" or \"3,3,14\"")->required();
  pipeline->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*enumerate) {
      const auto cases =
          corollary == 2 ? enumerate_corollary_two(dmax) : enumerate_corollary_three(dmax);
      const RunConfig config =
          run_config(g, "enumerate", Json{{"corollary", corollary}, {"dmax", dmax}});
      if (g.as_json) {
        Json payload = Json::array();
        for (const auto& c : cases) payload.push_back(to_json(c));
        emit(g, make_report(config, std::move(payload)),
             std::to_string(cases.size()) + " cases");
      } else {
        const std::string csv = enumeration_csv(cases);
        if (!g.out.empty()) {
          write_file(g.out, csv);
          std::cout << cases.size() << " cases  [table: " << g.out << "]\n";
        } else {
          std::cout << csv;
        }
      }
      return 0;
    }

    if (*defect) {
      const Format fmt = Format::parse(format_spec);
      const SecantVerdict v = secant_dim(fmt, k, sysdim_options(g));
      const RunConfig config =
          run_config(g, "defect", Json{{"format", fmt.to_string()}, {"k", k}});
      std::ostringstream s1;
      s1 << fmt.to_string() << " k=" << k << ": rank " << v.verdict.rank << "/" << v.expected_rank
         << (v.defective ? "  DEFECTIVE (probabilistic)" : "  not defective (certificate)");
      emit(g, make_report(config, to_json(v)), s1.str());
      return 0;
    }

    if (*weakdefect) {
      const Format fmt = Format::parse(format_spec);
      WeakDefectOptions opt;
      opt.starts = starts;
      opt.jobs = g.jobs;
      const SingularityReport r = check_weak_defectivity(fmt, npoints, g.seed, opt);
      const RunConfig config = run_config(
          g, "weakdefect",
          Json{{"format", fmt.to_string()}, {"points", npoints}, {"starts", starts}});
      std::ostringstream s1;
      s1 << fmt.to_string() << " with " << npoints << " double points: "
         << (r.weakly_defective ? "weakly defective" : "not weakly defective") << " ("
         << (r.certification == Certification::certified ? "certified search" : "heuristic search")
         << ")";
      emit(g, make_report(config, to_json(r)), s1.str());
      return 0;
    }

    if (*horace) {
      const Format fmt = Format::parse(format_spec);
      const HoraceStep step = horace_step(fmt, l, h, horace_options(g));
      const RunConfig config = run_config(
          g, "horace", Json{{"format", fmt.to_string()}, {"l", l}, {"h", h}});
      std::ostringstream s1;
      s1 << fmt.to_string() << " l=" << l << " h=" << h << ": hypotheses "
         << (step.hypotheses_ok ? "verified" : ("failed at " + step.failed_hypothesis))
         << ", conclusion " << to_string(step.conclusion.status);
      emit(g, make_report(config, to_json(step)), s1.str());
      return 0;
    }

    if (*certify) {
      const Format fmt = Format::parse(format_spec);
      const Certificate cert = certify_weakly(fmt, s, horace_options(g));
      const RunConfig config =
          run_config(g, "certify", Json{{"format", fmt.to_string()}, {"s", s}});
      std::ostringstream s1;
      s1 << fmt.to_string() << " s=" << s << ": " << to_string(cert.status) << " (t0="
         << cert.schedule.t0 << ", " << cert.leaves.size() << " leaves)";
      emit(g, make_report(config, to_json(cert)), s1.str());
      return 0;
    }

    if (*decompose) {
      const Format fmt = Format::parse(format_spec);
      FitOptions fit_opt;
      SectionC target{fmt, {}};
      if (!target_path.empty()) {
        auto loaded = load_tensor(read_file(target_path));
        if (!std::holds_alternative<SectionC>(loaded))
          throw std::runtime_error("decompose: target must be a complex tensor file");
        target = std::get<SectionC>(loaded);
        if (!(target.format == fmt))
          throw std::runtime_error("decompose: target format does not match --format");
      } else {
        target = synthesize_target(fmt, k, g.seed).first;
      }
      if (!save_target.empty()) write_file(save_target, dump_tensor(target));
      const NuReport rep =
          nu_experiment_on(target, k, nstarts, g.seed, fit_opt, cluster_tol, g.jobs);
      const RunConfig config = run_config(
          g, "decompose",
          Json{{"format", fmt.to_string()}, {"k", k}, {"starts", nstarts},
               {"cluster_tol", cluster_tol}, {"target", target_path.empty() ? "synthesized" : target_path}});
      std::ostringstream s1;
      if (rep.inconclusive)
        s1 << fmt.to_string() << " k=" << k << ": inconclusive (" << rep.nconverged
           << " converged fits)";
      else
        s1 << fmt.to_string() << " k=" << k << ": nu >= " << rep.nu_est << " ("
           << rep.nconverged << "/" << rep.nstarts << " converged)";
      emit(g, make_report(config, to_json(rep)), s1.str());
      return 0;
    }

    if (*pipeline) {
      std::vector<int> degrees;
      {
        std::stringstream ss(degree_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) degrees.push_back(std::stoi(tok));
      }
      const int expected_n = corollary == 2 ? 2 : 3;
      if (int(degrees.size()) != expected_n)
        throw std::runtime_error("pipeline: corollary " + std::to_string(corollary) + " needs " +
                                 std::to_string(expected_n) + " degrees");
      const Format fmt(std::vector<int>(expected_n, 1), degrees);
      const auto maybe_k = perfect_k(fmt);
      if (!maybe_k)
        throw std::runtime_error("pipeline: " + fmt.to_string() + " is not a perfect case");
      const PerfectCase pc{fmt, *maybe_k, PerfectCase::Nu::multiple};

      PipelineOptions opt;
      opt.horace = horace_options(g);
      opt.weak.jobs = g.jobs;
      opt.seed = g.seed;
      const PipelineReport rep = corollary_pipeline(pc, opt);
      const RunConfig config = run_config(
          g, "pipeline", Json{{"corollary", corollary}, {"d", degrees}});
      std::ostringstream s1;
      s1 << fmt.to_string() << " k=" << pc.k << ": "
         << (rep.hypotheses_verified ? "hypotheses verified (probabilistic)"
                                     : "hypotheses NOT verified");
      emit(g, make_report(config, to_json(rep)), s1.str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "pswaring: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
