#include "qsk/io.hpp"

#include <fstream>
#include <sstream>

namespace qsk {

using nlohmann::json;

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InputError(where + ": expected a complex number [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const StateVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_to_json(v(i)));
    }
    return out;
}

json to_json(const RealizationFile& f) {
    const Realization& r = f.realization;
    json out;
    out["d"] = r.d;
    out["dims"] = json::array({r.dim_a(), r.dim_b()});
    out["state"] = to_json(r.state);
    out["A"] = json::array({to_json(r.A[0]), to_json(r.A[1])});
    out["B"] = json::array({to_json(r.B[0]), to_json(r.B[1])});
    out["metadata"] = f.metadata;
    return out;
}

json to_json(const CorrelationTensor& t) {
    const Scenario& s = t.scenario();
    json p = json::array();
    for (int x = 0; x < s.m; ++x) {
        for (int y = 0; y < s.m; ++y) {
            json grid = json::array();
            for (int a = 0; a < s.d; ++a) {
                json row = json::array();
                for (int b = 0; b < s.d; ++b) {
                    row.push_back(t(x, y, a, b));
                }
                grid.push_back(std::move(row));
            }
            p.push_back({{"x", x}, {"y", y}, {"p", std::move(grid)}});
        }
    }
    return {{"d", s.d}, {"m", s.m}, {"settings", std::move(p)}};
}

ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) {
        throw InputError(where + ": expected a non-empty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array() || j[0].empty()) {
        throw InputError(where + ": rows must be non-empty arrays");
    }
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw InputError(where + ": ragged matrix at row " + std::to_string(i));
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(i, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                        where + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
        }
    }
    return m;
}

StateVector vector_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) {
        throw InputError(where + ": expected a non-empty array of complex numbers");
    }
    StateVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], where + "[" + std::to_string(i) + "]");
    }
    return v;
}

RealizationFile realization_from_json(const json& j) {
    if (!j.is_object()) {
        throw InputError("realization: top level must be an object");
    }
    for (const char* key : {"d", "dims", "state", "A", "B"}) {
        if (!j.contains(key)) {
            throw InputError(std::string("realization: missing field '") + key + "'");
        }
    }
    if (!j["d"].is_number_integer() || j["d"].get<int>() < 2) {
        throw InputError("realization.d: expected an integer >= 2");
    }
    const json& dims = j["dims"];
    if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() || !dims[1].is_number_integer()) {
        throw InputError("realization.dims: expected [dA, dB]");
    }
    RealizationFile f;
    Realization& r = f.realization;
    r.d = j["d"].get<int>();
    const auto da = dims[0].get<Eigen::Index>();
    const auto db = dims[1].get<Eigen::Index>();
    r.state = vector_from_json(j["state"], "realization.state");
    for (const char* party : {"A", "B"}) {
        const json& pair = j[party];
        if (!pair.is_array() || pair.size() != 2) {
            throw InputError(std::string("realization.") + party + ": expected two matrices");
        }
    }
    for (std::size_t x = 0; x < 2; ++x) {
        r.A[x] = matrix_from_json(j["A"][x], "realization.A[" + std::to_string(x) + "]");
        r.B[x] = matrix_from_json(j["B"][x], "realization.B[" + std::to_string(x) + "]");
        if (r.A[x].rows() != da || r.A[x].cols() != da) {
            throw InputError("realization.A[" + std::to_string(x) + "]: shape does not match dims[0]");
        }
        if (r.B[x].rows() != db || r.B[x].cols() != db) {
            throw InputError("realization.B[" + std::to_string(x) + "]: shape does not match dims[1]");
        }
    }
    if (r.state.size() != da * db) {
        throw InputError("realization.state: length does not equal dA * dB");
    }
    if (j.contains("metadata")) {
        const json& meta = j["metadata"];
        if (!meta.is_object()) {
            throw InputError("realization.metadata: expected an object of strings");
        }
        for (const auto& [key, value] : meta.items()) {
            if (!value.is_string()) {
                throw InputError("realization.metadata." + key + ": expected a string");
            }
            f.metadata[key] = value.get<std::string>();
        }
    }
    return f;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

RealizationFile read_realization(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
    return realization_from_json(j);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path);
    }
    out << text;
}

}  // namespace qsk
