#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "specfd/convergence.hpp"
#include "specfd/expression.hpp"

namespace specfd {

/// Full-precision decimal formatting so emitted tables are stable golden files.
inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// complex JSON: {"vertices": [[coords...] ...], "maximal": [[ids...] ...]}
// ---------------------------------------------------------------------------

inline nlohmann::json complex_to_json(const SimplicialComplex& K,
                                      const GeometricRealization& G) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    auto ids = K.vertex_ids();
    for (int v : ids) {
        nlohmann::json pt = nlohmann::json::array();
        const auto& c = G.at(v);
        for (int i = 0; i < c.size(); ++i) pt.push_back(c[i]);
        j["vertices"].push_back(pt);
    }
    j["maximal"] = nlohmann::json::array();
    for (const auto& f : K.maximal_faces) {
        nlohmann::json fj = nlohmann::json::array();
        // re-index against the ascending vertex-id list
        for (int v : f.vertices()) {
            auto it = std::lower_bound(ids.begin(), ids.end(), v);
            fj.push_back(static_cast<int>(it - ids.begin()));
        }
        j["maximal"].push_back(fj);
    }
    return j;
}

inline std::pair<SimplicialComplex, GeometricRealization> complex_from_json(
    const nlohmann::json& j) {
    if (!j.contains("vertices") || !j.contains("maximal"))
        throw BuildError("complex JSON needs 'vertices' and 'maximal'");
    GeometricRealization G;
    int id = 0;
    for (const auto& pt : j.at("vertices")) {
        Eigen::VectorXd c(pt.size());
        for (size_t i = 0; i < pt.size(); ++i) c[i] = pt[i].get<double>();
        G.coordinates[id++] = c;
    }
    std::vector<Simplex> maximal;
    for (const auto& fj : j.at("maximal")) {
        std::vector<int> verts;
        for (const auto& v : fj) {
            int n = v.get<int>();
            if (n < 0 || n >= id) throw BuildError("maximal face references unknown vertex");
            verts.push_back(n);
        }
        maximal.push_back(Simplex(std::move(verts)));
    }
    SimplicialComplex K = build_complex(maximal);
    validate_realization(K, G);
    return {std::move(K), std::move(G)};
}

// ---------------------------------------------------------------------------
// poset JSON: Hasse diagram {"elements": [...], "covers": [[below, above]...],
// "faces": {"id": [vertex ids...]}}
// ---------------------------------------------------------------------------

inline nlohmann::json poset_to_json(const Poset& P) {
    nlohmann::json j;
    j["elements"] = nlohmann::json::array();
    j["faces"] = nlohmann::json::object();
    for (int x = 0; x < P.size(); ++x) {
        j["elements"].push_back(x);
        j["faces"][std::to_string(x)] = P.face_of(x).vertices();
    }
    j["covers"] = nlohmann::json::array();
    for (int y = 0; y < P.size(); ++y)
        for (int x = 0; x < P.size(); ++x) {
            if (x == y || !P.leq(y, x)) continue;
            bool covered = true;
            for (int z = 0; z < P.size() && covered; ++z)
                if (z != x && z != y && P.leq(y, z) && P.leq(z, x)) covered = false;
            if (covered) j["covers"].push_back({y, x});
        }
    return j;
}

// ---------------------------------------------------------------------------
// CSV emitters
// ---------------------------------------------------------------------------

inline std::string algebra_to_csv(const AlgebraElement& a) {
    std::ostringstream out;
    out << "vertex_id,re,im\n";
    for (int i = 0; i < a.size(); ++i)
        out << a.vertex_ids[i] << ',' << fmt17(a.values[i].real()) << ','
            << fmt17(a.values[i].imag()) << '\n';
    return out.str();
}

inline std::string spectrum_to_csv(const std::vector<double>& values) {
    std::ostringstream out;
    out << "index,value\n";
    for (size_t i = 0; i < values.size(); ++i) out << i << ',' << fmt17(values[i]) << '\n';
    return out.str();
}

inline std::string error_table_to_csv(const ErrorTable& table) {
    std::ostringstream out;
    out << "level,h,error,rate_cum\n";
    auto rates = table.cumulative_rates();
    for (size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        out << r.level << ',' << fmt17(r.h) << ',' << fmt17(r.error) << ',';
        if (std::isnan(rates[i]))
            out << "nan";
        else
            out << fmt17(rates[i]);
        out << '\n';
    }
    return out.str();
}

/// Sparse triplet dump of a complex matrix, rows in deterministic order.
inline std::string matrix_to_csv(const Eigen::MatrixXcd& M) {
    std::ostringstream out;
    out << "row,col,re,im\n";
    for (long i = 0; i < M.rows(); ++i)
        for (long j = 0; j < M.cols(); ++j) {
            if (M(i, j) == Complex(0.0)) continue;
            out << i << ',' << j << ',' << fmt17(M(i, j).real()) << ','
                << fmt17(M(i, j).imag()) << '\n';
        }
    return out.str();
}

// ---------------------------------------------------------------------------
// lattice spec JSON: {"dims": [{"m":..,"h":..,"periodic":..}...],
//                     "weights": ["expr" ...] (optional)}
// ---------------------------------------------------------------------------

inline LatticeSpec lattice_spec_from_json(const nlohmann::json& j) {
    if (!j.contains("dims")) throw BuildError("lattice spec needs 'dims'");
    LatticeSpec spec;
    for (const auto& dj : j.at("dims")) {
        LatticeDim d;
        d.m = dj.at("m").get<int>();
        d.h = dj.at("h").get<double>();
        d.periodic = dj.value("periodic", false);
        spec.dims.push_back(d);
    }
    if (j.contains("weights")) {
        for (const auto& wj : j.at("weights")) {
            Expression e = Expression::parse(wj.get<std::string>());
            spec.weights.push_back([e](const Eigen::VectorXd& x) { return e.eval(x); });
        }
    }
    return spec;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BuildError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BuildError("cannot write " + path);
    out << contents;
}

}  // namespace specfd
