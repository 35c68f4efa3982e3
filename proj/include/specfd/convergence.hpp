#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "specfd/models.hpp"

namespace specfd {

struct ErrorRow {
    int level = 0;
    double h = 0.0;
    double error = 0.0;
};

/// Least-squares slope of log(error) against log(h); rows at or below the
/// noise floor 1e-14 are ignored.
inline double estimate_rate(const std::vector<ErrorRow>& rows) {
    std::vector<double> x, y;
    for (const auto& r : rows)
        if (r.error > 1e-14) {
            x.push_back(std::log(r.h));
            y.push_back(std::log(r.error));
        }
    if (x.size() < 2) throw RateError("need at least two rows with positive error");
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= x.size();
    my /= y.size();
    double num = 0, den = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    if (den == 0.0) throw RateError("rate undefined: all rows share one mesh length");
    return num / den;
}

struct ErrorTable {
    std::vector<ErrorRow> rows;

    double rate() const { return estimate_rate(rows); }

    bool rate_defined() const {
        int positive = 0;
        for (const auto& r : rows)
            if (r.error > 1e-14) ++positive;
        return positive >= 2;
    }

    /// Rate fitted over rows 0..k, NaN while fewer than two usable rows.
    std::vector<double> cumulative_rates() const {
        std::vector<double> out;
        for (size_t k = 0; k < rows.size(); ++k) {
            std::vector<ErrorRow> head(rows.begin(), rows.begin() + k + 1);
            try {
                out.push_back(estimate_rate(head));
            } catch (const RateError&) {
                out.push_back(std::numeric_limits<double>::quiet_NaN());
            }
        }
        return out;
    }
};

/// n barycentric subdivisions of a realized base complex, with the induced
/// poset maps. Every fine face is re-checked to lie inside its carrier.
inline InverseSystem refine_sequence(const SimplicialComplex& K0,
                                     const GeometricRealization& G0, int n) {
    if (n < 0) throw CapacityError("level count must be nonnegative");
    InverseSystem sys;
    sys.levels.push_back({K0, G0, face_poset_op(K0)});
    long total = static_cast<long>(K0.faces.size());
    for (int lvl = 0; lvl < n; ++lvl) {
        const auto& prev = sys.levels.back();
        auto [K, G, S] = barycentric_subdivide(prev.K, prev.G);
        total += static_cast<long>(K.faces.size());
        if (total > 1000000) throw CapacityError("refinement exceeds the face budget");
        Poset X = face_poset_op(K);
        PosetMap phi = induced_poset_map(S, X, prev.X);

        for (const auto& [fine_face, coarse_face] : S.carrier)
            for (int v : fine_face.vertices()) {
                auto [b, residual] = detail::barycentric(G.at(v), coarse_face, prev.G);
                if (residual > kCarrierTol || b.minCoeff() < -kCarrierTol)
                    throw ConsistencyError("fine face escapes its carrier");
            }

        sys.refines.push_back(std::move(S));
        sys.steps.push_back(std::move(phi));
        sys.levels.push_back({std::move(K), std::move(G), std::move(X)});
    }
    return sys;
}

enum class LatticeModel { Line, Circle };

namespace detail {

/// Magnitudes of the paired spectral values: m values, sorted ascending.
inline std::vector<double> positive_spectral_values(const GradedMatrix& da) {
    std::vector<double> sv = spectral_values(da);
    std::vector<double> out;
    for (size_t k = sv.size() / 2; k < sv.size(); ++k) out.push_back(sv[k]);
    return out;  // already ascending
}

inline SpectralTriple lattice_triple(LatticeModel model, int m) {
    if (model == LatticeModel::Line) return line_lattice_triple(m, 1.0 / (m - 1));
    return circle_triple(m, 2.0 * std::numbers::pi / m);
}

}  // namespace detail

/// Spectral first-derivative measurement: per level, sorted positive spectral
/// values of da against sorted |f'| grid samples, worst matched discrepancy.
inline ErrorTable derivative_convergence(const std::function<double(double)>& f,
                                         const std::function<double(double)>& fprime,
                                         LatticeModel model, int levels, int m0 = 8) {
    ErrorTable table;
    for (int k = 0; k < levels; ++k) {
        const int m = m0 << k;
        SpectralTriple t = detail::lattice_triple(model, m);
        AlgebraElement a;
        a.values.resize(m);
        for (int j = 0; j < m; ++j) {
            a.vertex_ids.push_back(j);
            a.values[j] = f(t.positions[j]);
        }
        GradedMatrix da = graded_d(represent(a), t.D);
        std::vector<double> got = detail::positive_spectral_values(da);

        std::vector<double> want;
        const int nodes = (model == LatticeModel::Line) ? m - 1 : m;
        for (int j = 0; j < nodes; ++j) want.push_back(std::abs(fprime(t.positions[j])));
        if (model == LatticeModel::Line) want.push_back(0.0);  // structural zero pair
        std::sort(want.begin(), want.end());

        double err = 0.0;
        for (size_t i = 0; i < want.size(); ++i) err = std::max(err, std::abs(got[i] - want[i]));
        table.rows.push_back({k, t.D.h, err});
    }
    return table;
}

/// Laplacian against -f''; boundary nodes of the open line are excluded.
inline ErrorTable laplacian_convergence(const std::function<double(double)>& f,
                                        const std::function<double(double)>& fsecond,
                                        LatticeModel model, int levels, int m0 = 8) {
    ErrorTable table;
    for (int k = 0; k < levels; ++k) {
        const int m = m0 << k;
        SpectralTriple t = detail::lattice_triple(model, m);
        AlgebraElement a;
        a.values.resize(m);
        for (int j = 0; j < m; ++j) {
            a.vertex_ids.push_back(j);
            a.values[j] = f(t.positions[j]);
        }
        AlgebraElement lap = laplacian(a, t.D);
        const int lo = (model == LatticeModel::Line) ? 1 : 0;
        const int hi = (model == LatticeModel::Line) ? m - 1 : m;
        double err = 0.0;
        for (int j = lo; j < hi; ++j)
            err = std::max(err, std::abs(lap.values[j] - Complex(-fsecond(t.positions[j]))));
        table.rows.push_back({k, t.D.h, err});
    }
    return table;
}

/// Prop-style uniform approximation: sup distance between f and the
/// piecewise-linear prolongation of its samples, per refinement level.
inline ErrorTable approximation_convergence(const ScalarField& f, const InverseSystem& sys) {
    ErrorTable table;
    for (int n = 0; n < sys.depth(); ++n) {
        const auto& lvl = sys.levels[n];
        AlgebraElement a = sample(f, lvl.X, lvl.G);
        table.rows.push_back({n, mesh(lvl.K, lvl.G), sup_distance(f, a, lvl.K, lvl.G)});
    }
    return table;
}

/// Density matrix realizing a convex combination of the two-point stencils at
/// node j: -i <da>_omega = sum of weight * (one-sided difference).
inline GradedMatrix stencil_synthesis(const std::vector<std::pair<int, double>>& stencil,
                                      int j, const SpectralTriple& triple) {
    const int m = triple.m();
    if (j < 0 || j >= m) throw SynthesisError("stencil node out of range");
    double total = 0.0;
    for (const auto& [offset, w] : stencil) {
        if (offset != 1 && offset != -1)
            throw SynthesisError("only the two-point offsets +1/-1 are available");
        if (w < 0.0) throw SynthesisError("stencil weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw SynthesisError("stencil weights must sum to one");

    Eigen::MatrixXcd omega = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
    omega(j, j) = 1.0;  // even part carries the unit graded trace
    const Eigen::MatrixXd& W = triple.D.weights;
    for (const auto& [offset, w] : stencil) {
        // oriented edge whose difference quotient the stencil weight scales
        int src = (offset == 1) ? j : j - 1;
        int dst = src + 1;
        if (src < 0 || dst >= m) {
            if (triple.graph.adjacent(0, m - 1)) {  // wrap on the cycle
                src = (src + m) % m;
                dst = (dst + m) % m;
            } else {
                throw SynthesisError("stencil leaves the line lattice at node " +
                                     std::to_string(j));
            }
        }
        if (W(src, dst) == 0.0)
            throw SynthesisError("stencil edge carries no Dirac weight");
        // mu / W entry so the expectation picks up exactly the difference quotient
        omega(src, m + dst) += w / W(src, dst);
    }
    return GradedMatrix(std::move(omega));
}

}  // namespace specfd
