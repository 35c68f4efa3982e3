// Sample sin on a periodic lattice, differentiate through the Dirac
// commutator, and compare the spectral values with the classical derivative.

#include <cstdio>
#include <numbers>

#include "specfd/specfd.hpp"

int main() {
    using namespace specfd;

    const int m = 32;
    const double h = 2.0 * std::numbers::pi / m;
    SpectralTriple t = circle_triple(m, h);

    AlgebraElement a;
    a.values.resize(m);
    for (int j = 0; j < m; ++j) {
        a.vertex_ids.push_back(j);
        a.values[j] = std::sin(t.positions[j]);
    }

    GradedMatrix da = graded_d(represent(a), t.D);
    std::vector<double> sv = spectral_values(da);

    std::printf("spectral values of da (positive half) vs |cos| at the grid:\n");
    std::vector<double> expect;
    for (int j = 0; j < m; ++j) expect.push_back(std::abs(std::cos(t.positions[j])));
    std::sort(expect.begin(), expect.end());
    for (int k = 0; k < m; ++k)
        std::printf("  %12.8f   %12.8f\n", sv[m + k], expect[k]);

    AlgebraElement lap = laplacian(a, t.D);
    double worst = 0.0;
    for (int j = 0; j < m; ++j)
        worst = std::max(worst, std::abs(lap.values[j] - Complex(std::sin(t.positions[j]))));
    std::printf("max |Laplacian(sin) - sin| on the grid: %.3e (h^2 = %.3e)\n", worst, h * h);
    return 0;
}
