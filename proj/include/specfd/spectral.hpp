#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "specfd/algebra.hpp"

namespace specfd {

enum class Parity { Even, Odd, Mixed };

inline Eigen::MatrixXcd grading(int m) {
    Eigen::VectorXcd d(2 * m);
    d.head(m).setConstant(1.0);
    d.tail(m).setConstant(-1.0);
    return d.asDiagonal();
}

/// 2m x 2m complex matrix with its parity under the grading
/// gamma = diag(1_m, -1_m). Even elements commute with gamma (block
/// diagonal), odd ones anticommute (block off-diagonal).
class GradedMatrix {
public:
    static constexpr double kParityTol = 1e-12;

    explicit GradedMatrix(Eigen::MatrixXcd entries) : M_(std::move(entries)) {
        if (M_.rows() == 0 || M_.rows() != M_.cols() || M_.rows() % 2 != 0)
            throw ParityError("graded matrix must be square of even dimension");
        m_ = static_cast<int>(M_.rows()) / 2;
        const double scale = std::max(1.0, M_.cwiseAbs().maxCoeff());
        const double diag = std::max(M_.topLeftCorner(m_, m_).cwiseAbs().maxCoeff(),
                                     M_.bottomRightCorner(m_, m_).cwiseAbs().maxCoeff());
        const double off = std::max(M_.topRightCorner(m_, m_).cwiseAbs().maxCoeff(),
                                    M_.bottomLeftCorner(m_, m_).cwiseAbs().maxCoeff());
        if (off <= kParityTol * scale)
            parity_ = Parity::Even;
        else if (diag <= kParityTol * scale)
            parity_ = Parity::Odd;
        else
            parity_ = Parity::Mixed;
    }

    const Eigen::MatrixXcd& matrix() const { return M_; }
    int m() const { return m_; }
    Parity parity() const { return parity_; }
    bool is_zero() const { return M_.cwiseAbs().maxCoeff() == 0.0; }

private:
    Eigen::MatrixXcd M_;
    int m_ = 0;
    Parity parity_ = Parity::Mixed;
};

/// Undirected simple graph on vertices 0..m-1.
struct VertexGraph {
    int m = 0;
    std::vector<std::pair<int, int>> edges;  // normalized i < j, sorted

    bool adjacent(int i, int j) const {
        if (i == j) return false;
        auto e = std::minmax(i, j);
        return std::binary_search(edges.begin(), edges.end(), std::pair{e.first, e.second});
    }

    static VertexGraph path(int m) {
        VertexGraph g{m, {}};
        for (int i = 0; i + 1 < m; ++i) g.edges.push_back({i, i + 1});
        return g;
    }

    static VertexGraph cycle(int m) {
        VertexGraph g = path(m);
        if (m >= 3) g.edges.insert(g.edges.begin(), {0, m - 1});
        std::sort(g.edges.begin(), g.edges.end());
        return g;
    }

    /// 1-skeleton of a complex; vertex k of the graph is the k-th vertex of K
    /// in ascending id order.
    static VertexGraph from_complex(const SimplicialComplex& K) {
        auto ids = K.vertex_ids();
        std::map<int, int> pos;
        for (size_t k = 0; k < ids.size(); ++k) pos[ids[k]] = static_cast<int>(k);
        VertexGraph g{static_cast<int>(ids.size()), {}};
        for (const auto& f : K.faces)
            if (f.dim() == 1)
                g.edges.push_back({pos[f.vertices()[0]], pos[f.vertices()[1]]});
        std::sort(g.edges.begin(), g.edges.end());
        return g;
    }
};

/// Dirac operator D = (i/h) [[0, W], [-W^T, 0]]. W carries one real weight
/// per oriented edge; the assembled matrix is hermitian and odd for any real W.
struct DiracOperator {
    Eigen::MatrixXd weights;  // m x m block D^-
    double h = 1.0;

    int m() const { return static_cast<int>(weights.rows()); }

    Eigen::MatrixXcd matrix() const {
        const int n = m();
        Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
        const Complex iu(0.0, 1.0);
        D.topRightCorner(n, n) = (iu / h) * weights;
        D.bottomLeftCorner(n, n) = -(iu / h) * weights.transpose();
        return D;
    }

    double operator_norm() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(weights.transpose() * weights);
        return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff())) / h;
    }
};

/// Validates admissibility: weights vanish exactly off the graph, every edge
/// carries a weight in at least one orientation, and ||D||*h stays below
/// twice the maximal weighted degree.
inline DiracOperator dirac_from_graph(const VertexGraph& g, const Eigen::MatrixXd& weights,
                                      double h) {
    if (h <= 0.0) throw AdmissibilityError("mesh length must be positive");
    if (weights.rows() != g.m || weights.cols() != g.m)
        throw AdmissibilityError("weight matrix does not match the graph");
    for (int i = 0; i < g.m; ++i)
        for (int j = 0; j < g.m; ++j)
            if (weights(i, j) != 0.0 && !g.adjacent(i, j))
                throw AdmissibilityError("nonzero weight between non-adjacent vertices " +
                                         std::to_string(i) + "," + std::to_string(j));
    for (const auto& [i, j] : g.edges)
        if (weights(i, j) == 0.0 && weights(j, i) == 0.0)
            throw AdmissibilityError("edge " + std::to_string(i) + "," + std::to_string(j) +
                                     " carries no weight");

    DiracOperator D{weights, h};
    double maxdeg = 0.0;
    for (int i = 0; i < g.m; ++i) {
        double deg = 0.0;
        for (int j = 0; j < g.m; ++j) deg += std::abs(weights(i, j)) + std::abs(weights(j, i));
        maxdeg = std::max(maxdeg, deg);
    }
    if (D.operator_norm() * h > 2.0 * maxdeg + 1e-12)
        throw AdmissibilityError("operator norm exceeds the weighted-degree bound");
    return D;
}

/// Combinatorial Dirac operator: unit weight at (i, j), i < j, per edge.
inline DiracOperator combinatorial_dirac(const VertexGraph& g, double h) {
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(g.m, g.m);
    for (const auto& [i, j] : g.edges) W(i, j) = 1.0;
    return dirac_from_graph(g, W, h);
}

/// Finite even spectral triple over a vertex graph. `positions` optionally
/// carries a 1-d grid coordinate per vertex (used by the lattice models).
struct SpectralTriple {
    VertexGraph graph;
    DiracOperator D;
    Eigen::VectorXd positions;

    int m() const { return graph.m; }
    Eigen::MatrixXcd gamma() const { return grading(m()); }
};

/// rho(a) = diag(lambda_1..lambda_m, lambda_1..lambda_m).
inline GradedMatrix represent(const AlgebraElement& a) {
    const int m = a.size();
    Eigen::VectorXcd d(2 * m);
    d.head(m) = a.values;
    d.tail(m) = a.values;
    return GradedMatrix(Eigen::MatrixXcd(d.asDiagonal()));
}

inline AlgebraElement elementary(int j, int m) {
    AlgebraElement a;
    a.values = Eigen::VectorXcd::Zero(m);
    a.values[j] = 1.0;
    for (int k = 0; k < m; ++k) a.vertex_ids.push_back(k);
    return a;
}

/// Graded differential db = Db - eps_b bD; the parity of the result flips.
inline GradedMatrix graded_d(const GradedMatrix& b, const DiracOperator& D) {
    if (b.parity() == Parity::Mixed)
        throw ParityError("graded differential needs a matrix of definite parity");
    const double eps = (b.parity() == Parity::Even) ? 1.0 : -1.0;
    Eigen::MatrixXcd Dm = D.matrix();
    return GradedMatrix(Dm * b.matrix() - eps * b.matrix() * Dm);
}

/// Signed singular values of an odd matrix, the paper's "spectrum" of a
/// 1-form: eigenvalues of b*b come in duplicated pairs; each pair contributes
/// +/- its square root. Returned sorted ascending, 2m values.
inline std::vector<double> spectral_values(const GradedMatrix& b) {
    if (b.parity() == Parity::Mixed || (b.parity() == Parity::Even && !b.is_zero()))
        throw ParityError("spectral values are defined for odd matrices");
    const int n = static_cast<int>(b.matrix().rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b.matrix().adjoint() * b.matrix());
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) s[i] = std::sqrt(std::max(0.0, es.eigenvalues()[i]));
    std::sort(s.begin(), s.end(), std::greater<double>());
    std::vector<double> out;
    for (int k = 0; k + 1 < n; k += 2) {
        out.push_back(s[k] == 0.0 ? 0.0 : -s[k]);
        out.push_back(s[k]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// (A, B) = Tr(B* A).
inline Complex inner_product(const GradedMatrix& A, const GradedMatrix& B) {
    if (A.m() != B.m()) throw LevelError("inner product needs equal dimensions");
    return (B.matrix().adjoint() * A.matrix()).trace();
}

inline double norm(const GradedMatrix& A) { return A.matrix().norm(); }

/// Orthogonal projection of B(H) onto the represented algebra:
/// c_j = (B_jj + B_{j+m,j+m}) / 2.
inline AlgebraElement project_onto_algebra(const GradedMatrix& B) {
    const int m = B.m();
    AlgebraElement a;
    a.values.resize(m);
    for (int j = 0; j < m; ++j) {
        a.values[j] = 0.5 * (B.matrix()(j, j) + B.matrix()(j + m, j + m));
        a.vertex_ids.push_back(j);
    }
    return a;
}

/// Adjoint of the derivation: delta(b) = p[D, b].
inline AlgebraElement delta(const GradedMatrix& b, const DiracOperator& D) {
    Eigen::MatrixXcd Dm = D.matrix();
    return project_onto_algebra(GradedMatrix(Dm * b.matrix() - b.matrix() * Dm));
}

/// Inner product on the algebra induced by (A,B) = Tr(B* A) through rho.
inline Complex algebra_inner(const AlgebraElement& A, const AlgebraElement& B) {
    if (A.size() != B.size()) throw LevelError("algebra inner product needs equal sizes");
    return 2.0 * B.values.dot(A.values);  // Eigen dot conjugates its receiver
}

/// Laplacian Delta(a) = p[D,[D,rho(a)]]; the sign makes (Delta a, a) = ||da||^2.
inline AlgebraElement laplacian(const AlgebraElement& a, const DiracOperator& D) {
    if (a.size() != D.m()) throw LevelError("element size does not match the Dirac operator");
    AlgebraElement out = delta(graded_d(represent(a), D), D);
    out.vertex_ids = a.vertex_ids;
    return out;
}

/// Matrix of the Laplacian in the vertex basis.
inline Eigen::MatrixXcd laplacian_matrix(const DiracOperator& D) {
    const int m = D.m();
    Eigen::MatrixXcd L(m, m);
    for (int j = 0; j < m; ++j) L.col(j) = laplacian(elementary(j, m), D).values;
    return 0.5 * (L + L.adjoint());  // hermitian up to roundoff
}

struct HodgeParts {
    AlgebraElement exact;     // range of delta
    AlgebraElement harmonic;  // kernel of the Laplacian
};

/// Orthogonal decomposition a = exact + harmonic with harmonic in ker(Delta).
inline HodgeParts hodge_decompose(const AlgebraElement& a, const DiracOperator& D) {
    if (a.size() != D.m()) throw LevelError("element size does not match the Dirac operator");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(laplacian_matrix(D));
    const double tol = 1e-10 * std::max(1.0, es.eigenvalues().maxCoeff());
    Eigen::VectorXcd harm = Eigen::VectorXcd::Zero(a.size());
    Eigen::VectorXcd exact = Eigen::VectorXcd::Zero(a.size());
    for (int k = 0; k < a.size(); ++k) {
        Eigen::VectorXcd v = es.eigenvectors().col(k);
        Eigen::VectorXcd comp = v * v.dot(a.values);
        if (es.eigenvalues()[k] <= tol)
            harm += comp;
        else
            exact += comp;
    }
    HodgeParts parts;
    parts.exact = AlgebraElement{a.vertex_ids, exact};
    parts.harmonic = AlgebraElement{a.vertex_ids, harm};
    return parts;
}

inline int kernel_dimension(const DiracOperator& D) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(laplacian_matrix(D));
    const double tol = 1e-10 * std::max(1.0, es.eigenvalues().maxCoeff());
    int dim = 0;
    for (int k = 0; k < D.m(); ++k)
        if (es.eigenvalues()[k] <= tol) ++dim;
    return dim;
}

namespace detail {

inline Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& M) {
    return Eigen::Map<const Eigen::VectorXcd>(M.data(), M.size());
}

/// Orthonormal column basis of the span, with relative rank tolerance.
inline Eigen::MatrixXcd orthonormal_span(const Eigen::MatrixXcd& A, double tol = 1e-10) {
    if (A.cols() == 0) return Eigen::MatrixXcd(A.rows(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] <= 0.0) return Eigen::MatrixXcd(A.rows(), 0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > tol * sv[0]) ++rank;
    return svd.matrixU().leftCols(rank);
}

}  // namespace detail

/// Quantized p-forms: orthonormal basis of span{rho(a0) da1 ... dap} together
/// with the junk space (images under d of degree p-1 representations of zero).
struct FormSpace {
    int degree = 0;
    std::vector<GradedMatrix> basis;
    std::vector<GradedMatrix> junk_basis;

    int dim() const { return static_cast<int>(basis.size()); }
};

inline FormSpace omega_basis(int p, const SpectralTriple& triple,
                             std::vector<AlgebraElement> generators = {}) {
    if (p < 0 || p > 2) throw CapacityError("form degrees above 2 are not supported");
    if (triple.m() > 16) throw CapacityError("omega_basis capped at m <= 16");
    const int m = triple.m();
    if (generators.empty())
        for (int j = 0; j < m; ++j) generators.push_back(elementary(j, m));
    const int n = static_cast<int>(generators.size());
    const int N = 4 * m * m;

    std::vector<Eigen::MatrixXcd> rho, drho;
    for (const auto& g : generators) {
        GradedMatrix r = represent(g);
        rho.push_back(r.matrix());
        drho.push_back(graded_d(r, triple.D).matrix());
    }

    // span of degree-p products with left algebra coefficient
    std::vector<std::vector<int>> tuples;  // (i_1..i_p) differential factors
    std::vector<int> tup(p);
    std::function<void(int)> gen = [&](int slot) {
        if (slot == p) { tuples.push_back(tup); return; }
        for (int i = 0; i < n; ++i) { tup[slot] = i; gen(slot + 1); }
    };
    gen(0);

    auto product = [&](int coeff, const std::vector<int>& t, bool differentiate_coeff) {
        Eigen::MatrixXcd M = differentiate_coeff ? drho[coeff] : rho[coeff];
        for (int i : t) M = M * drho[i];
        return M;
    };

    Eigen::MatrixXcd span(N, static_cast<long>(n) * tuples.size());
    long col = 0;
    for (int c = 0; c < n; ++c)
        for (const auto& t : tuples) span.col(col++) = detail::vectorize(product(c, t, false));
    Eigen::MatrixXcd full = detail::orthonormal_span(span);

    // junk: d-images of the null combinations one degree down
    Eigen::MatrixXcd junk(N, 0);
    if (p >= 1) {
        std::vector<std::vector<int>> low_tuples;
        std::vector<int> lt(p - 1);
        std::function<void(int)> gen_low = [&](int slot) {
            if (slot == p - 1) { low_tuples.push_back(lt); return; }
            for (int i = 0; i < n; ++i) { lt[slot] = i; gen_low(slot + 1); }
        };
        gen_low(0);
        Eigen::MatrixXcd low(N, static_cast<long>(n) * low_tuples.size());
        Eigen::MatrixXcd dlow(N, low.cols());
        col = 0;
        for (int c = 0; c < n; ++c)
            for (const auto& t : low_tuples) {
                low.col(col) = detail::vectorize(product(c, t, false));
                dlow.col(col) = detail::vectorize(product(c, t, true));
                ++col;
            }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(low, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        double top = sv.size() ? sv[0] : 0.0;
        std::vector<long> null_cols;
        for (long i = 0; i < svd.matrixV().cols(); ++i)
            if (i >= sv.size() || top == 0.0 || sv[i] <= 1e-10 * top) null_cols.push_back(i);
        Eigen::MatrixXcd null_images(N, static_cast<long>(null_cols.size()));
        long jc = 0;
        for (long i : null_cols) null_images.col(jc++) = dlow * svd.matrixV().col(i);
        junk = detail::orthonormal_span(null_images);
    }

    // quotient representatives: the part of the span orthogonal to the junk
    Eigen::MatrixXcd quotient = full;
    if (junk.cols() > 0) quotient = full - junk * (junk.adjoint() * full);
    quotient = detail::orthonormal_span(quotient);

    FormSpace fs;
    fs.degree = p;
    for (long c = 0; c < quotient.cols(); ++c)
        fs.basis.push_back(GradedMatrix(Eigen::Map<const Eigen::MatrixXcd>(
            quotient.col(c).data(), 2 * m, 2 * m)));
    for (long c = 0; c < junk.cols(); ++c)
        fs.junk_basis.push_back(GradedMatrix(Eigen::Map<const Eigen::MatrixXcd>(
            junk.col(c).data(), 2 * m, 2 * m)));
    return fs;
}

/// Distance between the degree-p form spaces of two admissible Dirac
/// operators on the same graph, as the spectral norm of the projector
/// difference. True iff the spans agree within 1e-10.
inline bool omega_invariance_check(const DiracOperator& D1, const DiracOperator& D2,
                                   const VertexGraph& g, int degree) {
    SpectralTriple t1{g, D1, {}};
    SpectralTriple t2{g, D2, {}};
    FormSpace f1 = omega_basis(degree, t1);
    FormSpace f2 = omega_basis(degree, t2);
    if (f1.dim() != f2.dim()) return false;
    const int N = 4 * g.m * g.m;
    auto projector = [N](const std::vector<GradedMatrix>& basis) {
        Eigen::MatrixXcd Q(N, basis.size());
        for (size_t c = 0; c < basis.size(); ++c)
            Q.col(c) = detail::vectorize(basis[c].matrix());
        return Eigen::MatrixXcd(Q * Q.adjoint());
    };
    Eigen::MatrixXcd diff = projector(f1.basis) - projector(f2.basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff);
    return es.eigenvalues().cwiseAbs().maxCoeff() <= 1e-10;
}

/// Tr_s(x) = Tr(gamma x).
inline Complex graded_trace(const GradedMatrix& x) {
    const int m = x.m();
    return x.matrix().topLeftCorner(m, m).trace() -
           x.matrix().bottomRightCorner(m, m).trace();
}

/// Expectation <b>_omega = Tr_s(omega b) after normalizing omega to unit
/// graded trace.
inline Complex expectation(const GradedMatrix& omega, const GradedMatrix& b) {
    Complex ts = graded_trace(omega);
    const double scale = std::max(1.0, omega.matrix().cwiseAbs().maxCoeff());
    if (std::abs(ts) <= 1e-14 * scale)
        throw NormalizationError("density matrix has vanishing graded trace");
    return graded_trace(GradedMatrix(Eigen::MatrixXcd(omega.matrix() * b.matrix() / ts)));
}

}  // namespace specfd
