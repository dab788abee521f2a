#pragma once

#include "triqal/frobenius.hpp"
#include "triqal/lens.hpp"
#include "triqal/tensor.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace triqal {

/// Malformed input; what() names the offending field.
class ParseError : public TensorError {
  public:
    ParseError(std::string field, const std::string& message)
        : TensorError("field '" + field + "': " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

/**
 * On-disk algebra:
 *   {"n": 2, "P": [0, 1], "Qbar": [i][j][s][t] -> [re, im],
 *    "Qm": [i][j][k][t] -> [re, im] (optional), "h": [j][k] -> [re, im] (optional)}
 */
struct AlgebraFile {
    BasisPermutation P;
    DenseTensor Qbar;
    std::optional<DenseTensor> Qm;
    std::optional<DenseTensor> h;

    int n() const { return P.dim(); }
};

/// Nested arrays of [re, im] pairs, depth = rank.
nlohmann::json tensor_to_json(const DenseTensor& t);
DenseTensor tensor_from_json(const nlohmann::json& j, int n, std::string_view signature,
                             const std::string& field);

nlohmann::json to_json(const AlgebraFile& file);
AlgebraFile algebra_from_json(const nlohmann::json& j);

AlgebraFile load_algebra(const std::filesystem::path& path);
void save_algebra(const std::filesystem::path& path, const AlgebraFile& file);

/// An h file is either {"h": [[...]]} or the bare [j][k] array.
DenseTensor load_form(const std::filesystem::path& path, int n);

nlohmann::json full_to_json(const FullThreeAlgebra& full, const BasisPermutation& p,
                            const BilinearForm& form);

/// {p, q, tetra: [{kind, l, faces: [{vertices, sign, bond}]}], bonds: [{id, mediator}]}
nlohmann::json network_to_json(const ContractionNetwork& net);

/// "0.25", "-1", "1+2i", "1.5-0.5i", "2i", "-i"
Scalar parse_complex(std::string_view text);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace triqal
