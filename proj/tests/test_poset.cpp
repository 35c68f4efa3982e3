#include <catch2/catch_amalgamated.hpp>

#include "specfd/convergence.hpp"
#include "specfd/poset.hpp"

using namespace specfd;

namespace {

SimplicialComplex three_cycle() {
    return build_complex({Simplex{0, 1}, Simplex{1, 2}, Simplex{0, 2}});
}

GeometricRealization three_cycle_coords() {
    GeometricRealization G;
    Eigen::VectorXd a(2), b(2), c(2);
    a << 0, 0;
    b << 1, 0;
    c << 0.5, 1.0;
    G.coordinates[0] = a;
    G.coordinates[1] = b;
    G.coordinates[2] = c;
    return G;
}

SimplicialComplex interval() { return build_complex({Simplex{0, 1}}); }

GeometricRealization interval_coords() {
    GeometricRealization G;
    G.coordinates[0] = Eigen::VectorXd::Zero(1);
    G.coordinates[1] = Eigen::VectorXd::Ones(1);
    return G;
}

/// Oracle: down-sets by filtering all 2^n subsets.
std::set<std::uint64_t> brute_force_down_sets(const Poset& P) {
    const int n = P.size();
    REQUIRE(n <= 20);
    std::set<std::uint64_t> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        bool down = true;
        for (int x = 0; x < n && down; ++x) {
            if (!(mask & (std::uint64_t{1} << x))) continue;
            for (int y = 0; y < n && down; ++y)
                if (P.leq(y, x) && !(mask & (std::uint64_t{1} << y))) down = false;
        }
        if (down) out.insert(mask);
    }
    return out;
}

}  // namespace

TEST_CASE("face poset of basic complexes", "[poset]") {
    SECTION("single edge") {
        Poset P = face_poset_op(interval());
        CHECK(P.size() == 3);
        CHECK(P.maximal_points().size() == 2);
        CHECK(P.minimal_points().size() == 1);
    }
    SECTION("single triangle") {
        Poset P = face_poset_op(build_complex({Simplex{0, 1, 2}}));
        CHECK(P.size() == 7);
        CHECK(P.maximal_points().size() == 3);
    }
    SECTION("three-cycle matches the circle picture") {
        Poset P = face_poset_op(three_cycle());
        CHECK(P.size() == 6);
        CHECK(P.maximal_points().size() == 3);
        CHECK(P.minimal_points().size() == 3);
    }
    SECTION("maximal points are the vertices, minimal points the top faces") {
        auto K = build_complex({Simplex{0, 1, 2}, Simplex{2, 3}});
        Poset P = face_poset_op(K);
        for (int x : P.maximal_points()) CHECK(P.face_of(x).dim() == 0);
        std::vector<Simplex> mins;
        for (int x : P.minimal_points()) mins.push_back(P.face_of(x));
        CHECK(mins == K.maximal_faces);
    }
}

TEST_CASE("order relation is reversed inclusion and a partial order", "[poset]") {
    Poset P = face_poset_op(three_cycle());
    // reflexive, antisymmetric, transitive, exhaustively
    for (int x = 0; x < P.size(); ++x) CHECK(P.leq(x, x));
    for (int x = 0; x < P.size(); ++x)
        for (int y = 0; y < P.size(); ++y) {
            if (x != y && P.leq(x, y)) CHECK_FALSE(P.leq(y, x));
            for (int z = 0; z < P.size(); ++z)
                if (P.leq(x, y) && P.leq(y, z)) CHECK(P.leq(x, z));
        }
}

TEST_CASE("basis_open is the open star", "[poset]") {
    Poset P = face_poset_op(three_cycle());
    int edge01 = P.index_of(Simplex{0, 1});
    CHECK(basis_open(P, edge01) == std::vector<int>{edge01});

    int v0 = P.index_of(Simplex{0});
    auto star = basis_open(P, v0);
    // vertex 0 with its two incident edges
    CHECK(star.size() == 3);
    for (int y : star) CHECK(P.face_of(y).contains(0));

    for (int x = 0; x < P.size(); ++x) {
        auto open = basis_open(P, x);
        CHECK(std::find(open.begin(), open.end(), x) != open.end());
    }
    CHECK_THROWS_AS(basis_open(P, 99), LookupError);
}

TEST_CASE("open-set lattice equals the brute-force down-set family", "[poset]") {
    SECTION("antichain of two elements") {
        SimplicialComplex K;  // two disjoint vertices
        K = build_complex({Simplex{0}, Simplex{1}});
        auto family = open_set_lattice(face_poset_op(K));
        CHECK(family.size() == 4);
    }
    SECTION("chain of two elements") {
        Poset chain;  // edge below vertex under reversed inclusion
        chain.faces = {Simplex{0}, Simplex{0, 1}};
        auto family = open_set_lattice(chain);
        CHECK(family.size() == 3);  // {}, {edge}, {edge, vertex}
    }
    SECTION("edge poset against the subset filter") {
        Poset P = face_poset_op(interval());
        auto family = open_set_lattice(P);
        auto oracle = brute_force_down_sets(P);
        CHECK(std::set<std::uint64_t>(family.begin(), family.end()) == oracle);
    }
    SECTION("three-cycle, frozen count and oracle equality") {
        Poset P = face_poset_op(three_cycle());
        auto family = open_set_lattice(P);
        CHECK(family.size() == 18);  // computed with the subset filter below
        CHECK(std::set<std::uint64_t>(family.begin(), family.end()) ==
              brute_force_down_sets(P));
    }
    SECTION("capacity cap") {
        Poset big;
        for (int i = 0; i < 65; ++i) big.faces.push_back(Simplex{i});
        CHECK_THROWS_AS(open_set_lattice(big), CapacityError);
    }
}

TEST_CASE("induced poset map sends faces to carriers", "[poset]") {
    auto K = interval();
    auto G = interval_coords();
    auto [Kp, Gp, S] = barycentric_subdivide(K, G);
    Poset X = face_poset_op(K);
    Poset Xp = face_poset_op(Kp);
    PosetMap phi = induced_poset_map(S, Xp, X);

    CHECK(is_monotone(phi, Xp, X));
    CHECK(is_surjective(phi));

    // old vertices stay, the midpoint maps to the coarse edge
    CHECK(X.face_of(phi(Xp.index_of(Simplex{0}))) == Simplex{0});
    CHECK(X.face_of(phi(Xp.index_of(Simplex{1}))) == Simplex{1});
    CHECK(X.face_of(phi(Xp.index_of(Simplex{2}))) == Simplex{0, 1});
    CHECK(X.face_of(phi(Xp.index_of(Simplex{0, 2}))) == Simplex{0, 1});

    // the fine maximal points cover the coarse ones
    std::set<int> image_of_max;
    for (int y : Xp.maximal_points()) image_of_max.insert(phi(y));
    for (int x : X.maximal_points()) CHECK(image_of_max.count(x) == 1);
}

TEST_CASE("projection of points commutes with the step maps", "[poset]") {
    auto sys = refine_sequence(interval(), interval_coords(), 4);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int violations = 0;
    for (int t = 0; t < 1000; ++t) {
        Eigen::VectorXd x(1);
        x[0] = unif(rng);
        for (int n = 1; n < sys.depth(); ++n) {
            int fine = project_point(x, sys, n);
            int coarse = project_point(x, sys, n - 1);
            if (sys.steps[n - 1](fine) != coarse) ++violations;
        }
    }
    CHECK(violations == 0);

    SECTION("examples on level 1") {
        Eigen::VectorXd x(1);
        x[0] = 0.25;
        CHECK(sys.levels[1].X.face_of(project_point(x, sys, 1)) == Simplex{0, 2});
        x[0] = 0.5;
        CHECK(sys.levels[1].X.face_of(project_point(x, sys, 1)) == Simplex{2});
    }
    Eigen::VectorXd outside(1);
    outside[0] = -0.5;
    CHECK_THROWS_AS(project_point(outside, sys, 0), OutsideComplexError);
}

TEST_CASE("coherence of composed maps", "[poset]") {
    auto sys = refine_sequence(three_cycle(), three_cycle_coords(), 3);
    // phi_{l,n} composed in any bracketing agrees
    for (int l = 0; l < sys.depth(); ++l)
        for (int m = l; m < sys.depth(); ++m)
            for (int n = m; n < sys.depth(); ++n) {
                PosetMap direct = sys.map(l, n);
                PosetMap stepped = compose(sys.map(l, m), sys.map(m, n));
                CHECK(direct.image == stepped.image);
            }
    // and phi_{n,n} = id
    for (int n = 0; n < sys.depth(); ++n) {
        PosetMap idn = sys.map(n, n);
        for (int y = 0; y < sys.levels[n].X.size(); ++y) CHECK(idn(y) == y);
    }
}

TEST_CASE("star identity on sampled points", "[poset]") {
    auto sys = refine_sequence(interval(), interval_coords(), 2);

    SECTION("vertices and edges of the subdivided interval") {
        for (int x : sys.levels[1].X.maximal_points())
            CHECK(star_identity_check(sys, 1, x, 500));
        for (int x : sys.levels[1].X.minimal_points())
            CHECK(star_identity_check(sys, 1, x, 500));
    }

    SECTION("corrupted realization breaks the identity") {
        // move one vertex so that two edges overlap; the combinatorial and the
        // geometric sides of the identity then disagree
        InverseSystem bad = sys;
        auto& G1 = bad.levels[1].G;
        G1.coordinates[1][0] = 0.25;  // vertex 1 slides into the other edge
        bool all_good = true;
        for (int x = 0; x < bad.levels[1].X.size(); ++x)
            all_good = all_good && star_identity_check(bad, 1, x, 500);
        CHECK_FALSE(all_good);
    }
}

TEST_CASE("poset capacity and coherence guards", "[poset]") {
    CHECK_THROWS_AS(refine_sequence(interval(), interval_coords(), -1), CapacityError);
}
