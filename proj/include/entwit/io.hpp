#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "entwit/loophole.hpp"
#include "entwit/matrix.hpp"
#include "entwit/states.hpp"
#include "entwit/tolerances.hpp"
#include "entwit/version.hpp"
#include "entwit/witness.hpp"

namespace entwit {

using nlohmann::json;

// Shortest-round-trip decimal formatting (what nlohmann uses for JSON);
// used for CSV cells so files parse back to identical doubles.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) {
        // try shorter representations
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[32];
            std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
            std::sscanf(shorter, "%lf", &back);
            if (back == v) return shorter;
        }
    }
    return buf;
}

// --- JSON matrix/state documents: {dims, entries as [re, im], row-major} ---

inline json matrix_to_json(const CMatrix& m, Dims dims) {
    json entries = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            entries.push_back({m(i, j).real(), m(i, j).imag()});
    return json{{"dims", {dims.a, dims.b}}, {"entries", entries}};
}

inline CMatrix matrix_from_json(const json& doc, Dims* dims_out = nullptr) {
    if (!doc.contains("dims") || !doc.contains("entries"))
        throw std::invalid_argument("matrix document needs 'dims' and 'entries'");
    const Dims dims{doc["dims"].at(0).get<int>(), doc["dims"].at(1).get<int>()};
    const int n = dims.total();
    const auto& entries = doc["entries"];
    if (static_cast<int>(entries.size()) != n * n)
        throw std::invalid_argument("matrix document: entry count does not match dims");
    CMatrix m(n, n);
    for (int k = 0; k < n * n; ++k)
        m(k / n, k % n) = cplx(entries[k].at(0).get<double>(),
                               entries[k].at(1).get<double>());
    if (dims_out) *dims_out = dims;
    return m;
}

inline json density_to_json(const DensityMatrix& rho) {
    return matrix_to_json(rho.matrix, rho.dims);
}

inline DensityMatrix density_from_json(const json& doc,
                                       const Tolerances& tol = default_tolerances()) {
    Dims dims;
    CMatrix m = matrix_from_json(doc, &dims);
    return DensityMatrix::create(dims, std::move(m), tol);
}

inline json witness_to_json(const LinearWitness& w) {
    json doc = matrix_to_json(w.matrix, w.dims);
    doc["provenance"] = w.provenance.label;
    return doc;
}

inline json click_record_to_json(const ClickRecord& rec) {
    return json{{"eigenvalues", rec.eigenvalues},
                {"true_counts", rec.true_counts},
                {"lost_counts", rec.lost_counts},
                {"shots", rec.shots},
                {"kept", rec.kept},
                {"nominal_eta", rec.nominal_eta},
                {"realized_eta", rec.realized_eta},
                {"loss_model", rec.model == LossModel::EqualCount ? "equal-count"
                                                                  : "bernoulli"}};
}

// --- CSV emission -----------------------------------------------------------

// Metadata lines carried at the top of every CSV output.
inline void write_csv_metadata(std::ostream& os, const std::string& convention,
                               const Tolerances& tol, std::uint64_t seed) {
    os << "# entwit " << kVersion << "\n";
    os << "# constant_convention: " << convention << "\n";
    os << "# tolerances: structural=" << format_double(tol.structural)
       << " reconstruction=" << format_double(tol.reconstruction) << "\n";
    os << "# seed: " << seed << "\n";
}

inline void write_surface_csv(std::ostream& os, const std::vector<SurfacePoint>& rows,
                              CertifyMode mode, const std::string& convention) {
    os << "eta_minus,x_nl,boundary_w_m,mode,constant_convention\n";
    for (const auto& r : rows)
        os << format_double(r.eta_minus) << ',' << format_double(r.x_nl) << ','
           << format_double(r.boundary_w_m) << ',' << to_string(mode) << ','
           << convention << "\n";
}

} // namespace entwit
