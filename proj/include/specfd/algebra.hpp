#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "specfd/poset.hpp"

namespace specfd {

using Complex = std::complex<double>;

/// Element of the commutative algebra: one complex value per maximal point
/// (vertex) of a poset, in ascending vertex-id order.
struct AlgebraElement {
    std::vector<int> vertex_ids;
    Eigen::VectorXcd values;

    int size() const { return static_cast<int>(values.size()); }

    Complex at(int vertex) const {
        auto it = std::lower_bound(vertex_ids.begin(), vertex_ids.end(), vertex);
        if (it == vertex_ids.end() || *it != vertex)
            throw LookupError("vertex not in algebra element domain");
        return values[it - vertex_ids.begin()];
    }

    double sup_norm() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }
};

inline AlgebraElement make_element(const Poset& P, const Eigen::VectorXcd& values) {
    AlgebraElement a;
    for (int x : P.maximal_points()) a.vertex_ids.push_back(P.face_of(x).vertices()[0]);
    if (values.size() != static_cast<int>(a.vertex_ids.size()))
        throw LevelError("value count does not match the poset's maximal points");
    a.values = values;
    return a;
}

/// Vector in the finite representation space: one amplitude per poset element.
struct VectorElement {
    Eigen::VectorXcd amplitudes;

    double norm() const { return amplitudes.norm(); }
};

using ScalarField = std::function<Complex(const Eigen::VectorXd&)>;

/// chi_x(f) = f(x): evaluate f at every vertex of the realized poset.
inline AlgebraElement sample(const ScalarField& f, const Poset& P,
                             const GeometricRealization& G) {
    auto maximal = P.maximal_points();
    AlgebraElement a;
    a.values.resize(static_cast<int>(maximal.size()));
    int k = 0;
    for (int x : maximal) {
        int v = P.face_of(x).vertices()[0];
        Complex val;
        try {
            val = f(G.at(v));
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw EvaluationError(std::string("function undefined at vertex: ") + e.what());
        }
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
            throw EvaluationError("function non-finite at vertex " + std::to_string(v));
        a.vertex_ids.push_back(v);
        a.values[k++] = val;
    }
    return a;
}

/// Pullback along phi : X' -> X. A fine vertex inherits the value of its
/// carrier when that carrier is itself a vertex, and zero otherwise.
inline AlgebraElement pullback(const PosetMap& phi, const Poset& fine, const Poset& coarse,
                               const AlgebraElement& a) {
    if (phi.source_size() != fine.size() || phi.target_size != coarse.size())
        throw LevelError("poset map does not match the given posets");
    if (a.size() != static_cast<int>(coarse.maximal_points().size()))
        throw LevelError("element does not live on the coarse poset");

    auto fine_max = fine.maximal_points();
    AlgebraElement out;
    out.values.resize(static_cast<int>(fine_max.size()));
    int k = 0;
    for (int y : fine_max) {
        int x = phi(y);
        const Simplex& carrier = coarse.face_of(x);
        out.vertex_ids.push_back(fine.face_of(y).vertices()[0]);
        out.values[k++] = (carrier.dim() == 0) ? a.at(carrier.vertices()[0]) : Complex(0.0);
    }
    return out;
}

/// Prolongation of a Hilbert-space vector: duplicate amplitudes onto all
/// dimension-matching preimages, zero elsewhere.
inline VectorElement hilbert_prolong(const PosetMap& phi, const Poset& fine,
                                     const Poset& coarse, const VectorElement& xi) {
    if (xi.amplitudes.size() != coarse.size())
        throw LevelError("vector does not live on the coarse poset");
    if (phi.source_size() != fine.size() || phi.target_size != coarse.size())
        throw LevelError("poset map does not match the given posets");
    VectorElement out;
    out.amplitudes = Eigen::VectorXcd::Zero(fine.size());
    for (int y = 0; y < fine.size(); ++y) {
        int x = phi(y);
        if (fine.face_of(y).dim() == coarse.face_of(x).dim())
            out.amplitudes[y] = xi.amplitudes[x];
    }
    return out;
}

/// Piecewise-linear prolongation of vertex values over the realized complex.
class PiecewiseLinear {
public:
    PiecewiseLinear(const AlgebraElement& a, const SimplicialComplex& K,
                    const GeometricRealization& G)
        : K_(K), G_(G) {
        for (int i = 0; i < a.size(); ++i) values_[a.vertex_ids[i]] = a.values[i];
        for (int v : K.vertex_ids())
            if (!values_.count(v)) throw LevelError("element missing a vertex of the complex");
    }

    Complex operator()(const Eigen::VectorXd& x) const {
        for (const auto& f : K_.maximal_faces) {
            auto [b, residual] = detail::barycentric(x, f, G_);
            if (residual > kCarrierTol || b.minCoeff() < -kCarrierTol) continue;
            Complex acc = 0.0;
            for (int i = 0; i < b.size(); ++i) acc += b[i] * values_.at(f.vertices()[i]);
            return acc;
        }
        throw OutsideComplexError("point lies outside the realized complex");
    }

private:
    SimplicialComplex K_;
    GeometricRealization G_;
    std::map<int, Complex> values_;
};

inline PiecewiseLinear prolong_pl(const AlgebraElement& a, const SimplicialComplex& K,
                                  const GeometricRealization& G) {
    return PiecewiseLinear(a, K, G);
}

namespace detail {

/// Deterministic barycentric grid with roughly 100*dim points per face.
inline void face_grid(int dim, std::vector<Eigen::VectorXd>& barys) {
    barys.clear();
    if (dim == 0) {
        barys.push_back(Eigen::VectorXd::Ones(1));
        return;
    }
    int n;
    switch (dim) {
        case 1: n = 100; break;
        case 2: n = 19; break;   // 210 lattice points
        default: n = 11; break;  // 364 points for 3-simplices
    }
    Eigen::VectorXd b(dim + 1);
    std::function<void(int, int)> rec = [&](int slot, int left) {
        if (slot == dim) {
            b[slot] = static_cast<double>(left) / n;
            barys.push_back(b);
            return;
        }
        for (int i = 0; i <= left; ++i) {
            b[slot] = static_cast<double>(i) / n;
            rec(slot + 1, left - i);
        }
    };
    rec(0, n);
}

}  // namespace detail

/// sup over a dense deterministic sample of |f - prolong_pl(a)|.
inline double sup_distance(const ScalarField& f, const AlgebraElement& a,
                           const SimplicialComplex& K, const GeometricRealization& G) {
    std::map<int, Complex> vals;
    for (int i = 0; i < a.size(); ++i) vals[a.vertex_ids[i]] = a.values[i];

    double worst = 0.0;
    std::vector<Eigen::VectorXd> barys;
    for (const auto& face : K.maximal_faces) {
        detail::face_grid(face.dim(), barys);
        const auto& v = face.vertices();
        for (const auto& b : barys) {
            Eigen::VectorXd x = Eigen::VectorXd::Zero(G.ambient_dim());
            Complex interp = 0.0;
            for (int i = 0; i < b.size(); ++i) {
                x += b[i] * G.at(v[i]);
                interp += b[i] * vals.at(v[i]);
            }
            worst = std::max(worst, std::abs(f(x) - interp));
        }
    }
    return worst;
}

}  // namespace specfd
