// Timing comparison between the serial reference pair sweep and the OpenMP
// one, on synthetic blobs. Also cross-checks that both produce identical
// numbers.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "classsplom/dataset.hpp"
#include "classsplom/pipeline.hpp"

using namespace classsplom;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

bool identical(const std::vector<PairCell>& lhs, const std::vector<PairCell>& rhs) {
    if (lhs.size() != rhs.size()) return false;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        const auto& a = lhs[i];
        const auto& b = rhs[i];
        if (a.projection.axis1.direction != b.projection.axis1.direction) return false;
        if (a.projection.axis2.direction != b.projection.axis2.direction) return false;
        if (a.projection.coords != b.projection.coords) return false;
        if (a.summary.bootstrap_aucs != b.summary.bootstrap_aucs) return false;
        if (a.summary.aucba != b.summary.aucba) return false;
        if (a.summary.aucba_std != b.summary.aucba_std) return false;
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    const int num_classes = argc > 1 ? std::atoi(argv[1]) : 8;
    const int per_class = argc > 2 ? std::atoi(argv[2]) : 150;
    const int dims = argc > 3 ? std::atoi(argv[3]) : 40;
    const int bootstrap = argc > 4 ? std::atoi(argv[4]) : 200;

    Eigen::MatrixXd means = Eigen::MatrixXd::Zero(num_classes, dims);
    for (int k = 0; k < num_classes; ++k) means(k, k % dims) = 4.0 * (1 + k / dims);
    const std::vector<double> scales(static_cast<std::size_t>(num_classes), 1.0);
    const Dataset ds = generate_gaussian_blobs(means, scales, per_class, 7);

    std::printf("pairs=%d  n=%d  D=%d  B=%d\n", num_classes * (num_classes - 1) / 2,
                num_classes * per_class, dims, bootstrap);
#ifdef _OPENMP
    std::printf("omp max threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP\n");
#endif

#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
    omp_set_num_threads(1); // time the reference with no threading at all
#endif
    double t0 = now_seconds();
    const auto serial = compute_pairs_serial(ds, 1e-6, bootstrap, 42);
    const double serial_s = now_seconds() - t0;
    std::printf("serial:   %8.3f s\n", serial_s);

#ifdef _OPENMP
    omp_set_num_threads(max_threads);
#endif
    t0 = now_seconds();
    const auto parallel = compute_pairs_parallel(ds, 1e-6, bootstrap, 42);
    const double parallel_s = now_seconds() - t0;
    std::printf("parallel: %8.3f s   speedup x%.2f\n", parallel_s, serial_s / parallel_s);

    if (!identical(serial, parallel)) {
        std::printf("MISMATCH: serial and parallel sweeps disagree\n");
        return 1;
    }
    std::printf("results identical\n");
    return 0;
}
