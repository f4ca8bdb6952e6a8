/* Times the graded-sector assembly and elimination kernels under both
 * execution policies and checks that they agree. */
#include "affcoh/ce_cohomology.hpp"
#include "affcoh/tensor_fields.hpp"

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace affcoh;

namespace {

struct outcome {
  int h1 = 0, h2 = 0, z2 = 0, b1 = 0;
  bool operator==(const outcome& o) const {
    return h1 == o.h1 && h2 == o.h2 && z2 == o.z2 && b1 == o.b1;
  }
};

double run(exec ex, long w_hi, outcome* out) {
  auto t0 = std::chrono::steady_clock::now();
  auto mod = s12_graded_module(2, 0, w_hi);
  auto cplx = weight_zero_subcomplex(mod.rep, 2, ex);
  auto h1 = cohomology(cplx, 1, ex);
  auto h2 = cohomology(cplx, 2, ex);
  out->h1 = h1.dimension;
  out->h2 = h2.dimension;
  out->z2 = h2.cocycle_rank;
  out->b1 = h1.boundary_rank;
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("openmp not enabled in this build\n");
#endif
  for (long w_hi : {5L, 7L}) {
    outcome a, b;
    double ts = run(exec::serial, w_hi, &a);
    double tp = run(exec::openmp, w_hi, &b);
    bool same = a == b;
    std::printf("window [0, %ld]  serial %8.1f ms   openmp %8.1f ms   %s\n", w_hi,
                ts, tp, same ? "results agree" : "RESULTS DIFFER");
    if (!same) return 1;
  }
  return 0;
}
