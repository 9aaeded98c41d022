#pragma once

#include <variant>

#include <json.hpp>

#include "rankred/instances.hpp"

namespace rankred {

using nlohmann::json;

/// Malformed instance files and mismatched payloads; the CLI maps this to
/// exit code 2.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// field tag: {"p": 5} or "Q"
Field field_from_json(const json& j);
json field_to_json(const Field& f);

// scalars: integers for prime fields, "num/den" strings (or integers) over Q
Scalar scalar_from_json(const Field& f, const json& j, const std::string& path);
json scalar_to_json(const Scalar& s);

Matrix matrix_from_json(const Field& f, const json& j, const std::string& path);
json matrix_to_json(const Matrix& m);

// cells: scalar, "?" (auto-named fill.<row>.<col>) or "?name"
PartialMatrix partial_from_json(const Field& f, const json& j, const std::string& path);
json partial_to_json(const PartialMatrix& p);

Tensor tensor_from_json(const Field& f, const json& j, const std::string& path);
json tensor_to_json(const Tensor& t);

AffineMatrixFamily family_from_json(const Field& f, const json& j, const std::string& path);
json family_to_json(const AffineMatrixFamily& fam);

std::vector<PureTensor> pure_tensors_from_json(const Field& f, const json& j,
                                               const std::string& path);
json pure_tensors_to_json(const std::vector<PureTensor>& ts);

Assignment assignment_from_json(const Field& f, const json& j, const std::string& path);
json assignment_to_json(const Assignment& a);

Certificate certificate_from_json(const Field& f, const json& j, const std::string& path);
json certificate_to_json(const Certificate& c);

/// One instance file: a field tag plus exactly one payload key of
/// "matrix", "partial_matrix", "tensor" or "family", optionally with a
/// "certificate".
struct Instance {
  Field field = Field::gf(2);
  std::variant<Matrix, PartialMatrix, Tensor, AffineMatrixFamily> payload;
  std::optional<Certificate> certificate;

  const char* kind() const;
};

Instance instance_from_json(const json& j);
json instance_to_json(const Instance& inst);

/// FNV-1a over the compact serialization; stable across runs.
std::string digest(const json& j);

}  // namespace rankred
