#include <cstdlib>
#include <string>

#include "tailgate/kernels.hpp"

namespace tailgate {
namespace kernels {

namespace {

struct Dispatch {
    PairSumsFn fn;
    std::string name;
};

Dispatch resolve() {
    const char* forced = std::getenv("TAILGATE_KERNEL");
    std::string want = forced ? forced : "";
#if defined(TAILGATE_HAVE_AVX2_TU)
    if (want == "avx2") return {&pair_sums_avx2, "avx2"};
    if (want.empty() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return {&pair_sums_avx2, "avx2"};
#endif
    return {&pair_sums_scalar, "scalar"};
}

const Dispatch& dispatch() {
    static const Dispatch d = resolve();
    return d;
}

}  // namespace

double pair_sums(const double* u, const double* v, std::size_t n, std::size_t d,
                 double* a_row, double* b_row) {
    return dispatch().fn(u, v, n, d, a_row, b_row);
}

const std::string& active_kernel() { return dispatch().name; }

}  // namespace kernels
}  // namespace tailgate
