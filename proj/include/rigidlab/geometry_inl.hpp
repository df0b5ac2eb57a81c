#pragma once

#include <random>

namespace rigidlab {

template <class Rng>
std::vector<double> random_interior_point(const Immersion& imm, Rng& rng, double margin) {
    std::vector<double> x(imm.dim());
    for (int i = 0; i < imm.dim(); ++i) {
        double lo = imm.lo(i), hi = imm.hi(i);
        if (!imm.periodic(i)) {
            const double pad = margin * (hi - lo);
            lo += pad;
            hi -= pad;
        }
        x[i] = std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    return x;
}

}  // namespace rigidlab
