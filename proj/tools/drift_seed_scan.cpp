// Scans master seeds for the window-ladder drift check: lower model, d = 2,
// uniform marks, beta_0(0.5, 0.5) / |window| over 30 trials at n = 4, 8, 12.
// Prints each passing seed and the pass rate.
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "lab.hpp"

int main(int argc, char** argv) {
    using namespace cubeph;
    const unsigned long long first = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20260415ull;
    const int count = argc > 2 ? std::atoi(argv[2]) : 200;

    ModelSpec model;
    model.kind = ModelKind::lower;
    model.dim = 2;
    model.marks.assign(3, Distribution::uniform(0, 1));
    const std::vector<TimePair> pairs{{0.5, 0.5}};
    const std::vector<int> ladder{4, 8, 12};

    int passed = 0;
    double drift = 0;
    for (int i = 0; i < count; ++i) {
        const MonteCarlo mc{model, 30, first + static_cast<unsigned long long>(i), 1};
        const auto sweep = lln_sweep(mc, 0, pairs, ladder);
        const double m8 = sweep[1].mean[0], m12 = sweep[2].mean[0];
        const bool ok = sweep[0].std[0] > sweep[1].std[0] && sweep[1].std[0] > sweep[2].std[0] &&
                        std::abs(m12 - m8) <= 0.05 * m12;
        drift += m8 - m12;
        if (ok) {
            ++passed;
            std::printf("seed %llu passes: mean8 %.6f mean12 %.6f\n", static_cast<unsigned long long>(mc.seed), m8, m12);
        }
    }
    std::printf("%d of %d seeds pass; average mean8 - mean12 = %.6f\n", passed, count, drift / count);
    return 0;
}
