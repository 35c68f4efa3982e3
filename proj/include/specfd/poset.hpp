#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "specfd/simplicial.hpp"

namespace specfd {

/// Opposite face poset of a complex: one element per face, y <= x iff the face
/// of y contains the face of x. Maximal points are the vertices, minimal
/// points the maximal faces.
struct Poset {
    std::vector<Simplex> faces;  // element id = canonical face index

    int size() const { return static_cast<int>(faces.size()); }

    const Simplex& face_of(int x) const {
        if (x < 0 || x >= size()) throw LookupError("poset element out of range");
        return faces[x];
    }

    /// y <= x in the reversed-inclusion order.
    bool leq(int y, int x) const { return face_of(y).has_face(face_of(x)); }

    std::vector<int> maximal_points() const {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i)
            if (faces[i].dim() == 0) out.push_back(i);
        return out;
    }

    std::vector<int> minimal_points() const {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i) {
            bool has_lower = false;
            for (int j = 0; j < size() && !has_lower; ++j)
                if (j != i && leq(j, i)) has_lower = true;
            if (!has_lower) out.push_back(i);
        }
        return out;
    }

    int index_of(const Simplex& s) const {
        auto it = std::lower_bound(faces.begin(), faces.end(), s);
        if (it == faces.end() || !(*it == s)) throw LookupError("face not in poset");
        return static_cast<int>(it - faces.begin());
    }
};

inline Poset face_poset_op(const SimplicialComplex& K) {
    Poset P;
    P.faces = K.faces;
    return P;
}

/// Basic open set U_x = { y : y <= x }; under the face dictionary, the faces
/// containing sigma_x.
inline std::vector<int> basis_open(const Poset& P, int x) {
    P.face_of(x);
    std::vector<int> out;
    for (int y = 0; y < P.size(); ++y)
        if (P.leq(y, x)) out.push_back(y);
    return out;
}

/// All down-sets (Alexandrov open sets) as bitsets, the finite stand-in for
/// the ideal lattice. Exhaustive, so capped at 64 elements.
inline std::vector<std::uint64_t> open_set_lattice(const Poset& P) {
    const int n = P.size();
    if (n > 64) throw CapacityError("open-set lattice enumeration capped at 64 elements");

    std::vector<std::uint64_t> down(n, 0);  // down(x) = bitset of {y : y <= x}
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (P.leq(y, x)) down[x] |= (std::uint64_t{1} << y);

    std::set<std::uint64_t> family{0};
    std::vector<std::uint64_t> queue{0};
    while (!queue.empty()) {
        std::uint64_t U = queue.back();
        queue.pop_back();
        for (int x = 0; x < n; ++x) {
            if (U & (std::uint64_t{1} << x)) continue;
            if ((down[x] & ~(U | (std::uint64_t{1} << x))) != 0) continue;
            std::uint64_t V = U | (std::uint64_t{1} << x);
            if (family.insert(V).second) queue.push_back(V);
        }
    }

    std::vector<std::uint64_t> out(family.begin(), family.end());
    // family of down-sets is a lattice; spot-verify closure when small enough
    if (out.size() <= 4096) {
        for (size_t i = 0; i < out.size(); ++i)
            for (size_t j = i + 1; j < out.size(); ++j) {
                if (!family.count(out[i] | out[j]) || !family.count(out[i] & out[j]))
                    throw ConsistencyError("down-set family not closed under union/intersection");
            }
    }
    return out;
}

/// A monotone map between posets, elementwise.
struct PosetMap {
    std::vector<int> image;  // image[y] for y in the source
    int target_size = 0;

    int operator()(int y) const {
        if (y < 0 || y >= static_cast<int>(image.size()))
            throw LookupError("poset map argument out of range");
        return image[y];
    }

    int source_size() const { return static_cast<int>(image.size()); }
};

inline bool is_monotone(const PosetMap& f, const Poset& source, const Poset& target) {
    for (int y = 0; y < source.size(); ++y)
        for (int x = 0; x < source.size(); ++x)
            if (source.leq(y, x) && !target.leq(f(y), f(x))) return false;
    return true;
}

inline bool is_surjective(const PosetMap& f) {
    std::vector<char> hit(f.target_size, 0);
    for (int y = 0; y < f.source_size(); ++y) hit[f(y)] = 1;
    for (char c : hit)
        if (!c) return false;
    return true;
}

/// phi : X' -> X sending each fine face (a chain) to its carrier.
inline PosetMap induced_poset_map(const SubdivisionMap& S, const Poset& fine,
                                  const Poset& coarse) {
    PosetMap f;
    f.target_size = coarse.size();
    f.image.resize(fine.size());
    for (int y = 0; y < fine.size(); ++y)
        f.image[y] = coarse.index_of(S.carrier_of(fine.face_of(y)));
    if (!is_monotone(f, fine, coarse))
        throw ConsistencyError("induced poset map is not monotone");
    if (!is_surjective(f))
        throw ConsistencyError("induced poset map is not surjective");
    return f;
}

inline PosetMap compose(const PosetMap& outer, const PosetMap& inner) {
    PosetMap f;
    f.target_size = outer.target_size;
    f.image.resize(inner.source_size());
    for (int y = 0; y < inner.source_size(); ++y) f.image[y] = outer(inner(y));
    return f;
}

inline PosetMap identity_map(const Poset& P) {
    PosetMap f;
    f.target_size = P.size();
    f.image.resize(P.size());
    for (int y = 0; y < P.size(); ++y) f.image[y] = y;
    return f;
}

/// One refinement level: complex, realization and its opposite face poset.
struct SystemLevel {
    SimplicialComplex K;
    GeometricRealization G;
    Poset X;
};

/// Finite truncation of the inverse system of posets: levels plus the step
/// maps phi_{n,n+1} : X_{n+1} -> X_n. Longer arrows are compositions.
struct InverseSystem {
    std::vector<SystemLevel> levels;
    std::vector<PosetMap> steps;          // steps[i] : X_{i+1} -> X_i
    std::vector<SubdivisionMap> refines;  // refines[i] : K_{i+1} -> K_i carriers

    int depth() const { return static_cast<int>(levels.size()); }

    /// phi_{l,n} for l <= n.
    PosetMap map(int l, int n) const {
        if (l < 0 || n >= depth() || l > n) throw LookupError("bad level pair");
        PosetMap f = identity_map(levels[n].X);
        for (int i = n - 1; i >= l; --i) f = compose(steps[i], f);
        return f;
    }
};

/// p_n : |K| -> X_n, the carrier of the point as a poset element.
inline int project_point(const Eigen::VectorXd& x, const InverseSystem& sys, int n) {
    if (n < 0 || n >= sys.depth()) throw LookupError("level out of range");
    const auto& lvl = sys.levels[n];
    return lvl.X.index_of(carrier_of_point(x, lvl.K, lvl.G));
}

namespace detail {

/// Deterministic sample of points in |K|: a barycentric grid on each maximal
/// face plus jittered interior points from a fixed-seed generator.
inline std::vector<Eigen::VectorXd> sample_points(const SimplicialComplex& K,
                                                  const GeometricRealization& G,
                                                  int count, unsigned seed = 12345) {
    std::vector<Eigen::VectorXd> pts;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int per_face =
        std::max<int>(1, count / static_cast<int>(std::max<size_t>(1, K.maximal_faces.size())));
    for (const auto& f : K.maximal_faces) {
        const auto& v = f.vertices();
        const int k = f.dim();
        for (int t = 0; t < per_face; ++t) {
            // exponential spacings give uniform barycentric samples
            Eigen::VectorXd b(k + 1);
            double s = 0;
            for (int i = 0; i <= k; ++i) {
                b[i] = -std::log(1.0 - unif(rng));
                s += b[i];
            }
            b /= s;
            Eigen::VectorXd x = Eigen::VectorXd::Zero(G.ambient_dim());
            for (int i = 0; i <= k; ++i) x += b[i] * G.at(v[i]);
            pts.push_back(std::move(x));
        }
    }
    return pts;
}

/// Geometric open-star membership: x lies in some maximal face whose
/// barycentric support contains all vertices of sigma.
inline bool in_open_star(const Eigen::VectorXd& x, const Simplex& sigma,
                         const SimplicialComplex& K, const GeometricRealization& G) {
    for (const auto& f : K.maximal_faces) {
        if (!f.has_face(sigma)) continue;
        auto [b, residual] = detail::barycentric(x, f, G);
        if (residual > kCarrierTol || b.minCoeff() < -kCarrierTol) continue;
        bool all_positive = true;
        for (int v : sigma.vertices()) {
            const auto& fv = f.vertices();
            int pos = static_cast<int>(std::lower_bound(fv.begin(), fv.end(), v) - fv.begin());
            if (b[pos] <= kCarrierTol) { all_positive = false; break; }
        }
        if (all_positive) return true;
    }
    return false;
}

}  // namespace detail

/// Sampled check of p_n^{-1}(U_x) = st(sigma_n(x)): the carrier-based and the
/// geometric predicate must agree on every sampled point.
inline bool star_identity_check(const InverseSystem& sys, int n, int x,
                                int samples = 1000, unsigned seed = 12345) {
    if (n < 0 || n >= sys.depth()) throw LookupError("level out of range");
    const auto& lvl = sys.levels[n];
    const Simplex& sigma = lvl.X.face_of(x);
    for (const auto& q : detail::sample_points(lvl.K, lvl.G, samples, seed)) {
        int p = project_point(q, sys, n);
        bool via_poset = lvl.X.leq(p, x);
        bool via_star = detail::in_open_star(q, sigma, lvl.K, lvl.G);
        if (via_poset != via_star) return false;
    }
    return true;
}

}  // namespace specfd
