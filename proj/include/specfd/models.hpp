#pragma once

#include <functional>
#include <string>
#include <vector>

#include "specfd/spectral.hpp"

namespace specfd {

/// Line lattice x_j = j*h with the upper-shift combinatorial Dirac operator.
inline SpectralTriple line_lattice_triple(int m, double h) {
    if (m < 2) throw SizeError("line lattice needs at least 2 vertices");
    if (h <= 0.0) throw SizeError("lattice spacing must be positive");
    SpectralTriple t;
    t.graph = VertexGraph::path(m);
    t.D = combinatorial_dirac(t.graph, h);
    t.positions.resize(m);
    for (int j = 0; j < m; ++j) t.positions[j] = j * h;
    return t;
}

/// Periodic lattice theta_j = j*h on a cycle; the weight block is the upper
/// shift plus the wrap entry in the lower-left corner.
inline SpectralTriple circle_triple(int m, double h) {
    if (m < 3) throw SizeError("circle lattice needs at least 3 vertices");
    if (h <= 0.0) throw SizeError("lattice spacing must be positive");
    SpectralTriple t;
    t.graph = VertexGraph::cycle(m);
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j + 1 < m; ++j) W(j, j + 1) = 1.0;
    W(m - 1, 0) = 1.0;
    t.D = dirac_from_graph(t.graph, W, h);
    t.positions.resize(m);
    for (int j = 0; j < m; ++j) t.positions[j] = j * h;
    return t;
}

struct LatticeDim {
    int m = 2;
    double h = 1.0;
    bool periodic = false;
};

/// Per-direction weight functions are evaluated at full vertex coordinates,
/// so cross-direction metric factors (e.g. the torus) are expressible.
struct LatticeSpec {
    std::vector<LatticeDim> dims;
    std::vector<std::function<double(const Eigen::VectorXd&)>> weights;  // empty or per dim
};

/// Kronecker-sum spectral triple over a product of factor triples.
struct TensorTriple {
    std::vector<SpectralTriple> factors;
    Eigen::MatrixXcd D_assembled;
    long total_dim = 0;

    Eigen::MatrixXcd gamma() const {
        Eigen::MatrixXcd g = grading(factors[0].m());
        for (size_t k = 1; k < factors.size(); ++k) {
            Eigen::MatrixXcd gk = grading(factors[k].m());
            Eigen::MatrixXcd next(g.rows() * gk.rows(), g.cols() * gk.cols());
            for (long i = 0; i < g.rows(); ++i)
                for (long j = 0; j < g.cols(); ++j)
                    next.block(i * gk.rows(), j * gk.cols(), gk.rows(), gk.cols()) =
                        g(i, j) * gk;
            g = std::move(next);
        }
        return g;
    }
};

namespace detail {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    Eigen::MatrixXcd out(A.rows() * B.rows(), A.cols() * B.cols());
    for (long i = 0; i < A.rows(); ++i)
        for (long j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

/// 1 x ... x M x ... x 1 with M in slot k of the factor dimensions.
inline Eigen::MatrixXcd embed_in_slot(const Eigen::MatrixXcd& M, int k,
                                      const std::vector<long>& dims) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (size_t s = 0; s < dims.size(); ++s) {
        if (static_cast<int>(s) == k)
            out = kron(out, M);
        else
            out = kron(out, Eigen::MatrixXcd::Identity(dims[s], dims[s]));
    }
    return out;
}

inline void check_tensor_capacity(const std::vector<long>& dims) {
    if (dims.empty() || dims.size() > 3)
        throw CapacityError("tensor products are supported for 1 to 3 factors");
    long total = 1;
    for (long d : dims) {
        total *= d;
        if (total > 4096) throw CapacityError("tensor dimension capped at 4096");
    }
}

}  // namespace detail

/// D = sum_k 1 x ... x D^(k) x ... x 1 on the product of the factor spaces.
inline TensorTriple tensor_triple(std::vector<SpectralTriple> factors) {
    std::vector<long> dims;
    for (const auto& f : factors) dims.push_back(2L * f.m());
    detail::check_tensor_capacity(dims);

    TensorTriple t;
    t.total_dim = 1;
    for (long d : dims) t.total_dim *= d;
    t.D_assembled = Eigen::MatrixXcd::Zero(t.total_dim, t.total_dim);
    for (size_t k = 0; k < factors.size(); ++k)
        t.D_assembled += detail::embed_in_slot(factors[k].D.matrix(), static_cast<int>(k), dims);
    t.factors = std::move(factors);
    return t;
}

/// Lattice triples per direction, each block scaled by the metric weight
/// sampled at the source vertex of every oriented edge. Constant unit weights
/// reproduce the combinatorial tensor Dirac exactly.
inline TensorTriple metric_weighted_dirac(const LatticeSpec& spec) {
    const int d = static_cast<int>(spec.dims.size());
    if (!spec.weights.empty() && static_cast<int>(spec.weights.size()) != d)
        throw MetricError("weight function count must match the number of directions");

    std::vector<SpectralTriple> factors;
    std::vector<long> dims;
    for (const auto& dim : spec.dims) {
        factors.push_back(dim.periodic ? circle_triple(dim.m, dim.h)
                                       : line_lattice_triple(dim.m, dim.h));
        dims.push_back(2L * dim.m);
    }
    detail::check_tensor_capacity(dims);

    long total = 1;
    for (long n : dims) total *= n;

    TensorTriple t;
    t.total_dim = total;
    t.D_assembled = Eigen::MatrixXcd::Zero(total, total);

    // strides for the row-major multi-index over factor slots
    std::vector<long> stride(d, 1);
    for (int k = d - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

    auto coords_of = [&](const std::vector<long>& idx) {
        Eigen::VectorXd x(d);
        for (int s = 0; s < d; ++s) x[s] = factors[s].positions[idx[s] % spec.dims[s].m];
        return x;
    };

    for (int k = 0; k < d; ++k) {
        const int mk = spec.dims[k].m;
        const double hk = spec.dims[k].h;
        const Eigen::MatrixXd& W = factors[k].D.weights;
        // iterate over the indices of the other slots
        std::vector<long> idx(d, 0);
        std::function<void(int)> sweep = [&](int slot) {
            if (slot == d) {
                for (int a = 0; a < mk; ++a)
                    for (int b = 0; b < mk; ++b) {
                        if (W(a, b) == 0.0) continue;
                        double w = W(a, b);
                        if (!spec.weights.empty()) {
                            idx[k] = a;  // source vertex of the oriented edge
                            double rho = spec.weights[k](coords_of(idx));
                            if (!(rho > 0.0))
                                throw MetricError("nonpositive metric weight sample");
                            w *= rho;
                        }
                        long base = 0;
                        for (int s = 0; s < d; ++s)
                            if (s != k) base += idx[s] * stride[s];
                        const Complex iu(0.0, 1.0);
                        long row = base + a * stride[k];
                        long col = base + (b + mk) * stride[k];
                        t.D_assembled(row, col) += (iu / hk) * w;
                        t.D_assembled(col, row) += -(iu / hk) * w;
                    }
                return;
            }
            if (slot == k) { sweep(slot + 1); return; }
            for (idx[slot] = 0; idx[slot] < dims[slot]; ++idx[slot]) sweep(slot + 1);
        };
        sweep(0);
    }
    t.factors = std::move(factors);
    return t;
}

}  // namespace specfd
