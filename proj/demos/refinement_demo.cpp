// Refine the unit interval, print the poset sizes and the sup-distance decay
// of a sampled function under piecewise-linear prolongation.

#include <cstdio>

#include "specfd/specfd.hpp"

int main() {
    using namespace specfd;

    SimplicialComplex K = build_complex({Simplex{0, 1}});
    GeometricRealization G;
    G.coordinates[0] = Eigen::VectorXd::Zero(1);
    G.coordinates[1] = Eigen::VectorXd::Ones(1);

    InverseSystem sys = refine_sequence(K, G, 5);
    std::printf("level   faces   mesh\n");
    for (int n = 0; n < sys.depth(); ++n)
        std::printf("%5d   %5zu   %.6f\n", n, sys.levels[n].K.faces.size(),
                    mesh(sys.levels[n].K, sys.levels[n].G));

    ScalarField f = [](const Eigen::VectorXd& x) { return Complex(std::sin(3.0 * x[0])); };
    ErrorTable table = approximation_convergence(f, sys);
    std::printf("\nsup |sin(3x) - PL interpolant|\n");
    for (const auto& row : table.rows)
        std::printf("  level %d: h=%.5f error=%.3e\n", row.level, row.h, row.error);
    std::printf("fitted rate: %.3f\n", table.rate());
    return 0;
}
