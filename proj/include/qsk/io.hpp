#pragma once

// JSON serialization of realizations and probability tensors.
//
// Complex numbers are [re, im] pairs; matrices are arrays of rows.

#include <map>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "qsk/bell.hpp"

namespace qsk {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RealizationFile {
    Realization realization;
    std::map<std::string, std::string> metadata;
};

[[nodiscard]] nlohmann::json to_json(const ComplexMatrix& m);
[[nodiscard]] nlohmann::json to_json(const StateVector& v);
[[nodiscard]] nlohmann::json to_json(const RealizationFile& f);
[[nodiscard]] nlohmann::json to_json(const CorrelationTensor& t);

/// Throws InputError with a path-qualified message on malformed input.
[[nodiscard]] ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& where);
[[nodiscard]] StateVector vector_from_json(const nlohmann::json& j, const std::string& where);
[[nodiscard]] RealizationFile realization_from_json(const nlohmann::json& j);

/// Canonical text form: two-space indentation, trailing newline.
[[nodiscard]] std::string dump_canonical(const nlohmann::json& j);

[[nodiscard]] RealizationFile read_realization(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace qsk
