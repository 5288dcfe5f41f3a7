#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpm/extremal.hpp"
#include "qpm/quasiprob.hpp"
#include "qpm/simulate.hpp"

namespace qpm {

using json = nlohmann::json;

// Complex scalars are serialized as two-element arrays [re, im].

inline json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw Error(ErrorKind::InvalidArgument, "complex scalar must be a [re, im] pair");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

inline json to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw Error(ErrorKind::InvalidArgument, "matrix must be a nonempty array of rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (static_cast<Eigen::Index>(j[i].size()) != cols)
            throw Error(ErrorKind::InvalidArgument, "ragged matrix rows");
        for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
    }
    return m;
}

inline json to_json(const ComplexVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
    return out;
}

inline ComplexVector vector_from_json(const json& j) {
    ComplexVector v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex_from_json(j[i]);
    return v;
}

// --- state file: { "dim": d, "matrix": [[...]] } ---

inline json state_to_json(const DensityMatrix& rho) {
    return json{{"dim", rho.dim()}, {"matrix", to_json(rho.matrix())}};
}

inline DensityMatrix state_from_json(const json& j, double tol = kDefaultTol) {
    ComplexMatrix m = matrix_from_json(j.at("matrix"));
    if (j.contains("dim") && j.at("dim").get<Eigen::Index>() != m.rows())
        throw Error(ErrorKind::DimensionMismatch, "declared dim does not match the matrix");
    return DensityMatrix::validate(m, tol);
}

// --- PVM file: { "dim": d, "projectors": [...] } or { "dim": d, "basis": [...] } ---

inline json pvm_to_json(const Pvm& p) {
    json projectors = json::array();
    for (const auto& e : p.elements()) projectors.push_back(to_json(e.matrix()));
    return json{{"dim", p.dim()}, {"projectors", projectors}};
}

inline Pvm pvm_from_json(const json& j, double tol = kDefaultTol) {
    if (j.contains("basis")) {
        std::vector<ComplexVector> basis;
        for (const auto& row : j.at("basis")) basis.push_back(vector_from_json(row));
        return Pvm::from_basis(basis, tol);
    }
    if (!j.contains("projectors"))
        throw Error(ErrorKind::InvalidArgument, "PVM file needs 'projectors' or 'basis'");
    std::vector<Projector> elems;
    for (const auto& pj : j.at("projectors"))
        elems.push_back(Projector::validate(matrix_from_json(pj), tol));
    return Pvm::validate(std::move(elems), tol);
}

// --- quasi-probability table ---

inline json table_to_json(const QuasiProbTable& t) {
    return json{{"kind", to_string(t.kind())},
                {"dim", t.pvm_a().dim()},
                {"values", to_json(t.values())},
                {"row_marginals", t.row_marginals()},
                {"col_marginals", t.col_marginals()},
                {"total", to_json(t.total())}};
}

inline TableKind table_kind_from_string(const std::string& s) {
    if (s == "margenau_hill" || s == "mh") return TableKind::margenau_hill;
    if (s == "kirkwood_dirac" || s == "kd") return TableKind::kirkwood_dirac;
    if (s == "wigner_rule" || s == "wigner") return TableKind::wigner_rule;
    if (s == "factorized") return TableKind::factorized;
    throw Error(ErrorKind::InvalidArgument, "unknown table kind: " + s);
}

inline QuasiProbTable table_from_json(const json& j, const Pvm& pa, const Pvm& pb) {
    return QuasiProbTable::from_values(pa, pb, matrix_from_json(j.at("values")),
                                       table_kind_from_string(j.at("kind").get<std::string>()));
}

// --- simulation report ---

inline json report_to_json(const SimulationReport& r) {
    json est = json::object();
    for (const auto& [name, e] : r.estimates)
        est[name] = json{{"value", e.value}, {"std_error", e.std_error}};
    json out{{"counts", r.counts},
             {"n", r.n},
             {"estimates", est},
             {"seed", json{{"value", r.seed.value}, {"stream", r.seed.stream}}}};
    if (r.sigma > 0.0) out["model"] = json{{"sigma", r.sigma}};
    return out;
}

// --- bound-scan report ---

inline json configuration_to_json(const Configuration& c) {
    return json{{"value", c.value},
                {"state", state_to_json(c.rho)},
                {"alpha", to_json(c.a.matrix())},
                {"beta", to_json(c.b.matrix())}};
}

inline json scan_report_to_json(const ScanReport& r) {
    return json{{"dim", r.dim},
                {"n_samples", r.n_samples},
                {"seed", json{{"value", r.seed.value}, {"stream", r.seed.stream}}},
                {"min", configuration_to_json(r.min_config)},
                {"max", configuration_to_json(r.max_config)}};
}

// --- file helpers ---

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::InvalidArgument, "cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

inline void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::InvalidArgument, "cannot write file: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace qpm
