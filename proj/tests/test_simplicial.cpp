#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "specfd/simplicial.hpp"

using namespace specfd;
using Catch::Approx;

namespace {

GeometricRealization interval_coords() {
    GeometricRealization G;
    G.coordinates[0] = Eigen::VectorXd::Zero(1);
    G.coordinates[1] = Eigen::VectorXd::Ones(1);
    return G;
}

GeometricRealization triangle_coords() {
    GeometricRealization G;
    Eigen::VectorXd a(2), b(2), c(2);
    a << 0, 0;
    b << 1, 0;
    c << 0, 1;
    G.coordinates[0] = a;
    G.coordinates[1] = b;
    G.coordinates[2] = c;
    return G;
}

/// Independent oracle: all nonempty chains of the face poset, by filtering
/// every subset of faces for total ordering under inclusion.
std::vector<std::vector<Simplex>> brute_force_chains(const SimplicialComplex& K) {
    const int n = static_cast<int>(K.faces.size());
    REQUIRE(n <= 20);
    std::vector<std::vector<Simplex>> chains;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<Simplex> sel;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) sel.push_back(K.faces[i]);
        bool chain = true;
        for (size_t i = 0; i < sel.size() && chain; ++i)
            for (size_t j = i + 1; j < sel.size() && chain; ++j)
                if (!sel[i].has_face(sel[j]) && !sel[j].has_face(sel[i])) chain = false;
        if (chain) chains.push_back(sel);
    }
    return chains;
}

}  // namespace

TEST_CASE("simplex invariants", "[simplicial]") {
    Simplex s{2, 0, 1};
    CHECK(s.vertices() == std::vector<int>{0, 1, 2});
    CHECK(s.dim() == 2);
    CHECK_THROWS_AS(Simplex(std::vector<int>{}), BuildError);
    CHECK_THROWS_AS(Simplex({1, 1}), BuildError);
    CHECK(Simplex{0, 1}.has_face(Simplex{1}));
    CHECK_FALSE(Simplex{0, 1}.has_face(Simplex{2}));
}

TEST_CASE("build_complex closes downward", "[simplicial]") {
    SECTION("single edge") {
        auto K = build_complex({Simplex{0, 1}});
        CHECK(K.faces.size() == 3);
        CHECK(K.maximal_faces == std::vector<Simplex>{Simplex{0, 1}});
    }
    SECTION("single triangle") {
        auto K = build_complex({Simplex{0, 1, 2}});
        CHECK(K.faces.size() == 7);
    }
    SECTION("three-cycle has no 2-face") {
        auto K = build_complex({Simplex{0, 1}, Simplex{1, 2}, Simplex{0, 2}});
        CHECK(K.faces.size() == 6);
        CHECK(K.maximal_faces.size() == 3);
    }
    SECTION("nested maximal faces are dropped") {
        auto K = build_complex({Simplex{0, 1, 2}, Simplex{0, 1}});
        CHECK(K.maximal_faces.size() == 1);
    }
    CHECK_THROWS_AS(build_complex({}), BuildError);
}

TEST_CASE("mesh measures the largest diameter", "[simplicial]") {
    auto K = build_complex({Simplex{0, 1}});
    CHECK(mesh(K, interval_coords()) == Approx(1.0));

    auto T = build_complex({Simplex{0, 1, 2}});
    GeometricRealization G;  // equilateral, side 2
    Eigen::VectorXd a(2), b(2), c(2);
    a << 0, 0;
    b << 2, 0;
    c << 1, std::sqrt(3.0);
    G.coordinates[0] = a;
    G.coordinates[1] = b;
    G.coordinates[2] = c;
    CHECK(mesh(T, G) == Approx(2.0));
}

TEST_CASE("interval subdivision bisects", "[simplicial]") {
    auto K = build_complex({Simplex{0, 1}});
    auto [Kp, Gp, S] = barycentric_subdivide(K, interval_coords());
    REQUIRE(Kp.vertex_ids().size() == 3);
    CHECK(Kp.maximal_faces.size() == 2);
    CHECK(mesh(Kp, Gp) == Approx(0.5));

    // coordinates are 0, 1 (old) and 0.5 (edge barycenter)
    std::multiset<double> coords;
    for (int v : Kp.vertex_ids()) coords.insert(Gp.at(v)[0]);
    CHECK(coords == std::multiset<double>{0.0, 0.5, 1.0});

    SECTION("mesh halves at every level") {
        SimplicialComplex cur = K;
        GeometricRealization curG = interval_coords();
        for (int n = 1; n <= 5; ++n) {
            auto [K2, G2, S2] = barycentric_subdivide(cur, curG);
            cur = std::move(K2);
            curG = std::move(G2);
            CHECK(mesh(cur, curG) == Approx(std::pow(2.0, -n)));
        }
    }
}

TEST_CASE("triangle subdivision counts match the chain oracle", "[simplicial]") {
    auto K = build_complex({Simplex{0, 1, 2}});
    auto chains = brute_force_chains(K);

    size_t singletons = 0, flags = 0;
    for (const auto& c : chains) {
        if (c.size() == 1) ++singletons;
        if (c.size() == 3) ++flags;
    }
    // frozen from the oracle: 7 faces, 6 maximal flags, 25 chains in total
    CHECK(singletons == 7);
    CHECK(flags == 6);
    CHECK(chains.size() == 25);

    auto [Kp, Gp, S] = barycentric_subdivide(K, triangle_coords());
    CHECK(Kp.vertex_ids().size() == singletons);
    CHECK(Kp.maximal_faces.size() == flags);
    CHECK(Kp.faces.size() == chains.size());
}

TEST_CASE("top face count of a subdivided n-simplex is (n+1)!", "[simplicial]") {
    // n = 1, 2, 3 against factorials
    const int expected[] = {2, 6, 24};
    for (int n = 1; n <= 3; ++n) {
        std::vector<int> verts(n + 1);
        for (int i = 0; i <= n; ++i) verts[i] = i;
        auto K = build_complex({Simplex(verts)});
        GeometricRealization G;
        for (int i = 0; i <= n; ++i) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
            if (i > 0) e[i - 1] = 1.0;
            G.coordinates[i] = e;
        }
        auto [Kp, Gp, S] = barycentric_subdivide(K, G);
        CHECK(static_cast<int>(Kp.maximal_faces.size()) == expected[n - 1]);
    }
}

TEST_CASE("subdivision preserves the geometric support", "[simplicial]") {
    auto K = build_complex({Simplex{0, 1, 2}});
    auto G = triangle_coords();
    auto [Kp, Gp, S] = barycentric_subdivide(K, G);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
        double u = unif(rng), v = unif(rng);
        if (u + v > 1.0) { u = 1.0 - u; v = 1.0 - v; }
        Eigen::VectorXd x(2);
        x << u, v;
        // contained in both realizations
        CHECK_NOTHROW(carrier_of_point(x, K, G));
        CHECK_NOTHROW(carrier_of_point(x, Kp, Gp));
    }
    // and conversely: sample barycentric points of every fine face
    std::uniform_real_distribution<double> bary(0.0, 1.0);
    int fine_samples = 0;
    while (fine_samples < 1000) {
        for (const auto& f : Kp.maximal_faces) {
            const auto& v = f.vertices();
            Eigen::VectorXd b(v.size());
            double s = 0;
            for (int i = 0; i < b.size(); ++i) {
                b[i] = -std::log(1.0 - bary(rng));
                s += b[i];
            }
            b /= s;
            Eigen::VectorXd x = Eigen::VectorXd::Zero(2);
            for (int i = 0; i < b.size(); ++i) x += b[i] * Gp.at(v[i]);
            CHECK_NOTHROW(carrier_of_point(x, K, G));
            ++fine_samples;
        }
    }
}

TEST_CASE("mesh contraction bound d/(d+1)", "[simplicial]") {
    auto K = build_complex({Simplex{0, 1, 2}});
    auto G = triangle_coords();
    auto [Kp, Gp, S] = barycentric_subdivide(K, G);
    CHECK(mesh(Kp, Gp) <= (2.0 / 3.0) * mesh(K, G) + 1e-12);

    auto I = build_complex({Simplex{0, 1}});
    auto IG = interval_coords();
    auto [Ip, IGp, IS] = barycentric_subdivide(I, IG);
    CHECK(mesh(Ip, IGp) <= 0.5 * mesh(I, IG) + 1e-12);
}

TEST_CASE("carrier of a point", "[simplicial]") {
    auto K = build_complex({Simplex{0, 1}});
    auto [Kp, Gp, S] = barycentric_subdivide(K, interval_coords());

    auto at = [&](double t) {
        Eigen::VectorXd x(1);
        x[0] = t;
        return carrier_of_point(x, Kp, Gp);
    };
    // vertex ids in K': 0 -> {0}, 1 -> {1}, 2 -> barycenter of {0,1}
    CHECK(at(0.25) == Simplex{0, 2});
    CHECK(at(0.5) == Simplex{2});
    CHECK(at(0.75) == Simplex{1, 2});

    Eigen::VectorXd outside(1);
    outside[0] = 1.5;
    CHECK_THROWS_AS(carrier_of_point(outside, Kp, Gp), OutsideComplexError);

    SECTION("barycenter of a triangle carries the 2-face") {
        auto T = build_complex({Simplex{0, 1, 2}});
        auto TG = triangle_coords();
        Eigen::VectorXd bary(2);
        bary << 1.0 / 3.0, 1.0 / 3.0;
        CHECK(carrier_of_point(bary, T, TG) == Simplex{0, 1, 2});
    }
}

TEST_CASE("carriers are consistent across one subdivision", "[simplicial]") {
    auto K = build_complex({Simplex{0, 1, 2}});
    auto G = triangle_coords();
    auto [Kp, Gp, S] = barycentric_subdivide(K, G);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        double u = unif(rng), v = unif(rng);
        if (u + v > 1.0) { u = 1.0 - u; v = 1.0 - v; }
        Eigen::VectorXd x(2);
        x << u, v;
        Simplex coarse = carrier_of_point(x, K, G);
        Simplex fine = carrier_of_point(x, Kp, Gp);
        // idempotence: the fine carrier's image under the subdivision map is
        // exactly the coarse carrier
        CHECK(S.carrier_of(fine) == coarse);
    }
}

TEST_CASE("degenerate realizations are rejected", "[simplicial]") {
    auto K = build_complex({Simplex{0, 1, 2}});
    GeometricRealization G;  // collinear
    Eigen::VectorXd a(2), b(2), c(2);
    a << 0, 0;
    b << 1, 0;
    c << 2, 0;
    G.coordinates[0] = a;
    G.coordinates[1] = b;
    G.coordinates[2] = c;
    CHECK_THROWS_AS(barycentric_subdivide(K, G), GeometryError);

    GeometricRealization missing;
    missing.coordinates[0] = a;
    CHECK_THROWS_AS(validate_realization(K, missing), GeometryError);
}
