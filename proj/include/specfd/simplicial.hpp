#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "specfd/errors.hpp"

namespace specfd {

/// An abstract simplex: a nonempty, strictly increasing list of vertex ids.
class Simplex {
public:
    Simplex() = default;

    explicit Simplex(std::vector<int> vertices) : v_(std::move(vertices)) {
        if (v_.empty()) throw BuildError("simplex must have at least one vertex");
        std::sort(v_.begin(), v_.end());
        if (std::adjacent_find(v_.begin(), v_.end()) != v_.end())
            throw BuildError("simplex has duplicate vertices");
    }

    Simplex(std::initializer_list<int> vertices) : Simplex(std::vector<int>(vertices)) {}

    const std::vector<int>& vertices() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()) - 1; }

    bool contains(int vertex) const {
        return std::binary_search(v_.begin(), v_.end(), vertex);
    }

    /// true iff `other` is a (not necessarily proper) face of this simplex.
    bool has_face(const Simplex& other) const {
        return std::includes(v_.begin(), v_.end(), other.v_.begin(), other.v_.end());
    }

    bool operator==(const Simplex& o) const { return v_ == o.v_; }
    bool operator!=(const Simplex& o) const { return v_ != o.v_; }

    /// Canonical order: by dimension, then lexicographically on vertex ids.
    bool operator<(const Simplex& o) const {
        if (v_.size() != o.v_.size()) return v_.size() < o.v_.size();
        return v_ < o.v_;
    }

private:
    std::vector<int> v_;
};

/// Faces closed under taking nonempty subsets, plus the maximal ones.
/// `faces` is kept in canonical order so face indices are deterministic.
struct SimplicialComplex {
    std::vector<Simplex> faces;
    std::vector<Simplex> maximal_faces;

    int dim() const {
        int d = -1;
        for (const auto& f : maximal_faces) d = std::max(d, f.dim());
        return d;
    }

    std::vector<int> vertex_ids() const {
        std::vector<int> ids;
        for (const auto& f : faces)
            if (f.dim() == 0) ids.push_back(f.vertices()[0]);
        return ids;  // canonical order puts vertices first, sorted
    }

    bool has_face(const Simplex& s) const {
        return std::binary_search(faces.begin(), faces.end(), s);
    }

    int face_index(const Simplex& s) const {
        auto it = std::lower_bound(faces.begin(), faces.end(), s);
        if (it == faces.end() || !(*it == s)) throw LookupError("face not in complex");
        return static_cast<int>(it - faces.begin());
    }
};

/// Vertex coordinates realizing a complex in R^d.
struct GeometricRealization {
    std::map<int, Eigen::VectorXd> coordinates;

    int ambient_dim() const {
        return coordinates.empty() ? 0 : static_cast<int>(coordinates.begin()->second.size());
    }

    const Eigen::VectorXd& at(int vertex) const {
        auto it = coordinates.find(vertex);
        if (it == coordinates.end()) throw GeometryError("vertex has no coordinates");
        return it->second;
    }
};

/// Carrier assignment of a barycentric subdivision: face of K' -> face of K.
struct SubdivisionMap {
    std::map<Simplex, Simplex> carrier;

    const Simplex& carrier_of(const Simplex& fine_face) const {
        auto it = carrier.find(fine_face);
        if (it == carrier.end()) throw LookupError("face not in subdivision map");
        return it->second;
    }
};

namespace detail {

inline void insert_all_subfaces(const Simplex& s, std::set<Simplex>& out) {
    const auto& v = s.vertices();
    const int n = static_cast<int>(v.size());
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> sub;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) sub.push_back(v[i]);
        out.insert(Simplex(std::move(sub)));
    }
}

}  // namespace detail

/// Downward closure of a list of simplices. Nested inputs are dropped from
/// the maximal set.
inline SimplicialComplex build_complex(const std::vector<Simplex>& maximal) {
    if (maximal.empty()) throw BuildError("empty maximal face list");
    for (const auto& s : maximal)
        if (s.dim() > 24) throw BuildError("simplex dimension too large for closure");

    std::set<Simplex> closure;
    for (const auto& s : maximal) detail::insert_all_subfaces(s, closure);

    std::set<Simplex> top(maximal.begin(), maximal.end());
    std::vector<Simplex> kept;
    for (const auto& s : top) {
        bool nested = false;
        for (const auto& t : top)
            if (!(t == s) && t.has_face(s)) { nested = true; break; }
        if (!nested) kept.push_back(s);
    }
    std::sort(kept.begin(), kept.end());

    SimplicialComplex K;
    K.faces.assign(closure.begin(), closure.end());
    K.maximal_faces = std::move(kept);
    return K;
}

/// Faces of a realized simplex must be affinely independent; tolerance on the
/// smallest singular value of the edge matrix.
inline constexpr double kAffineTol = 1e-10;

/// Barycentric membership / support threshold.
inline constexpr double kCarrierTol = 1e-9;

inline void validate_realization(const SimplicialComplex& K, const GeometricRealization& G) {
    for (int v : K.vertex_ids())
        if (G.coordinates.find(v) == G.coordinates.end())
            throw GeometryError("vertex " + std::to_string(v) + " has no coordinates");
    for (const auto& f : K.maximal_faces) {
        if (f.dim() == 0) continue;
        const auto& v = f.vertices();
        Eigen::MatrixXd E(G.ambient_dim(), f.dim());
        for (int i = 1; i <= f.dim(); ++i) E.col(i - 1) = G.at(v[i]) - G.at(v[0]);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(E);
        if (svd.singularValues().minCoeff() <= kAffineTol)
            throw GeometryError("degenerate realization: affinely dependent face");
    }
}

/// Largest face diameter of the realized complex.
inline double mesh(const SimplicialComplex& K, const GeometricRealization& G) {
    double best = 0.0;
    for (const auto& f : K.maximal_faces) {
        const auto& v = f.vertices();
        for (size_t i = 0; i < v.size(); ++i)
            for (size_t j = i + 1; j < v.size(); ++j)
                best = std::max(best, (G.at(v[i]) - G.at(v[j])).norm());
    }
    return best;
}

namespace detail {

/// Barycentric coordinates of x with respect to a realized face, least squares.
/// Returns (coords, residual-norm).
inline std::pair<Eigen::VectorXd, double> barycentric(const Eigen::VectorXd& x,
                                                      const Simplex& face,
                                                      const GeometricRealization& G) {
    const auto& v = face.vertices();
    const int k = face.dim();
    Eigen::VectorXd b(k + 1);
    if (k == 0) {
        b[0] = 1.0;
        return {b, (x - G.at(v[0])).norm()};
    }
    Eigen::MatrixXd E(x.size(), k);
    for (int i = 1; i <= k; ++i) E.col(i - 1) = G.at(v[i]) - G.at(v[0]);
    Eigen::VectorXd rhs = x - G.at(v[0]);
    Eigen::VectorXd t = E.colPivHouseholderQr().solve(rhs);
    double residual = (E * t - rhs).norm();
    b[0] = 1.0 - t.sum();
    for (int i = 1; i <= k; ++i) b[i] = t[i - 1];
    return {b, residual};
}

}  // namespace detail

/// The unique face whose relative interior contains x. Coordinates within
/// kCarrierTol of zero count as zero, so boundary points land on the lower face.
inline Simplex carrier_of_point(const Eigen::VectorXd& x, const SimplicialComplex& K,
                                const GeometricRealization& G) {
    for (const auto& f : K.maximal_faces) {
        auto [b, residual] = detail::barycentric(x, f, G);
        if (residual > kCarrierTol) continue;
        if (b.minCoeff() < -kCarrierTol) continue;
        std::vector<int> support;
        for (int i = 0; i < b.size(); ++i)
            if (b[i] > kCarrierTol) support.push_back(f.vertices()[i]);
        if (support.empty()) continue;
        return Simplex(std::move(support));
    }
    throw OutsideComplexError("point lies outside the realized complex");
}

/// Barycentric subdivision. Faces of K' are the nonempty chains of faces of K;
/// the new vertex for a face of K is its barycenter, and its id is the face's
/// canonical index in K, which makes repeated subdivision replayable.
inline std::tuple<SimplicialComplex, GeometricRealization, SubdivisionMap>
barycentric_subdivide(const SimplicialComplex& K, const GeometricRealization& G) {
    validate_realization(K, G);

    // Maximal chains are full flags ending at a maximal face; every chain is a
    // subchain of one of these, so the downward closure recovers all of K'.
    std::vector<Simplex> flags;
    std::vector<int> chain;
    auto descend = [&](auto&& self, const Simplex& face) -> void {
        chain.push_back(K.face_index(face));
        if (face.dim() == 0) {
            std::vector<int> ids(chain.begin(), chain.end());
            flags.push_back(Simplex(std::move(ids)));
        } else {
            const auto& v = face.vertices();
            for (size_t drop = 0; drop < v.size(); ++drop) {
                std::vector<int> sub;
                for (size_t i = 0; i < v.size(); ++i)
                    if (i != drop) sub.push_back(v[i]);
                self(self, Simplex(std::move(sub)));
            }
        }
        chain.pop_back();
    };
    for (const auto& top : K.maximal_faces) descend(descend, top);

    SimplicialComplex Kp = build_complex(flags);

    GeometricRealization Gp;
    for (int idx = 0; idx < static_cast<int>(K.faces.size()); ++idx) {
        const auto& v = K.faces[idx].vertices();
        Eigen::VectorXd c = Eigen::VectorXd::Zero(G.ambient_dim());
        for (int w : v) c += G.at(w);
        Gp.coordinates[idx] = c / static_cast<double>(v.size());
    }

    SubdivisionMap S;
    for (const auto& chain_face : Kp.faces) {
        // canonical face indices increase with dimension, so the largest id in
        // the chain is the largest face
        int top_idx = chain_face.vertices().back();
        S.carrier[chain_face] = K.faces[top_idx];
    }
    return {std::move(Kp), std::move(Gp), std::move(S)};
}

}  // namespace specfd
