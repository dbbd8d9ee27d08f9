// Compares the OpenMP kernels against their serial references on the two
// hot paths: F_p elimination rank and the multi-start fitting pool. The
// outputs are checked to match exactly while timing both sides.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "pswaring/fp.hpp"
#include "pswaring/parallel.hpp"
#include "pswaring/rng.hpp"
#include "pswaring/waring.hpp"

using namespace pswaring;

namespace {

double now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

FpMatrix random_matrix(const FpField& F, int rows, int cols, Rng& rng) {
  FpMatrix m(rows, cols);
  for (auto& v : m.a) v = std::uint32_t(rng.below(F.prime()));
  return m;
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", omp_get_max_threads());

  // F_p elimination: the same kernel single-threaded vs with the OpenMP
  // update loop; the independent textbook routine cross-checks the rank.
  {
    FpField F;
    Rng rng(1);
    std::printf("%-28s %10s %10s %8s\n", "fp rank", "serial[s]", "openmp[s]", "speedup");
    for (const auto& [rows, cols] : {std::pair{400, 500}, {800, 900}, {1200, 1400}}) {
      const FpMatrix m = random_matrix(F, rows, cols, rng);
      const int r_reference = fp_rank_reference(F, m);
      const double t0 = now();
      const int r_serial = fp_rank_single_thread(F, m);
      const double t1 = now();
      const int r_parallel = fp_rank(F, m);
      const double t2 = now();
      if (r_serial != r_parallel || r_serial != r_reference) {
        std::printf("MISMATCH: reference %d, serial %d, parallel %d\n", r_reference, r_serial,
                    r_parallel);
        return 1;
      }
      std::printf("%5dx%-22d %10.3f %10.3f %7.2fx\n", rows, cols, t1 - t0, t2 - t1,
                  (t1 - t0) / (t2 - t1));
    }
  }

  // Multi-start fitting: the same 24 fits through the serial loop and the
  // worker pool; results must agree start for start.
  {
    std::printf("\n%-28s %10s %10s %8s\n", "multi-start fit pool", "serial[s]", "openmp[s]",
                "speedup");
    const Format fmt({1, 1}, {4, 5});
    const auto [target, witness] = synthesize_target(fmt, 9, 7);
    (void)witness;
    FitOptions opt;
    const int nstarts = 24;

    auto run = [&](int jobs, std::vector<double>& residuals) {
      residuals.assign(nstarts, 0.0);
      run_indexed_jobs(nstarts, jobs, [&](int i) {
        const std::uint64_t seed = Rng::stream(7, std::uint64_t(i) + 1).next();
        residuals[i] = fit(target, 9, seed, opt).residual;
      });
    };

    std::vector<double> serial_res, parallel_res;
    const double t0 = now();
    run(1, serial_res);
    const double t1 = now();
    run(omp_get_max_threads(), parallel_res);
    const double t2 = now();
    for (int i = 0; i < nstarts; ++i) {
      if (serial_res[i] != parallel_res[i]) {
        std::printf("MISMATCH at start %d: %.17g vs %.17g\n", i, serial_res[i], parallel_res[i]);
        return 1;
      }
    }
    std::printf("%-28s %10.3f %10.3f %7.2fx\n", "24 fits on r=1,1;d=4,5", t1 - t0, t2 - t1,
                (t1 - t0) / (t2 - t1));
  }

  std::printf("\nkernel outputs identical across serial and parallel paths\n");
  return 0;
}
