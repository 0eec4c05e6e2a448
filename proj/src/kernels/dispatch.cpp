#include <cstdlib>
#include <string_view>

#include "gblab/kernels/kernels.hpp"

namespace gblab::kernels {

bool avx2_available() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
}

Isa active_isa() {
    static const Isa isa = [] {
        if (const char* env = std::getenv("GBLAB_SIMD"); env && std::string_view(env) == "scalar") return Isa::scalar;
        return avx2_available() ? Isa::avx2 : Isa::scalar;
    }();
    return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

double pairwise_sum(std::span<const double> x) {
    return active_isa() == Isa::avx2 ? avx2::pairwise_sum(x) : scalar::pairwise_sum(x);
}

double weighted_sum(std::span<const double> w, std::span<const double> f) {
    return active_isa() == Isa::avx2 ? avx2::weighted_sum(w, f) : scalar::weighted_sum(w, f);
}

void axpby(double s, std::span<const double> a, double t, std::span<const double> b, std::span<double> out) {
    if (active_isa() == Isa::avx2)
        avx2::axpby(s, a, t, b, out);
    else
        scalar::axpby(s, a, t, b, out);
}

}  // namespace gblab::kernels
