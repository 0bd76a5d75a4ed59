#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "susyqm/analysis.hpp"
#include "susyqm/matrix.hpp"
#include "susyqm/models.hpp"
#include "susyqm/policy.hpp"
#include "susyqm/susy.hpp"
#include "susyqm/validation.hpp"

namespace susyqm {

using Json = nlohmann::json;

// Every reader throws ParseError on a missing field, wrong type, wrong entry
// count or non-finite number.

/// Square matrices are {"dim": n, "entries": [[re, im], ...]} with n² entries
/// row-major. Rectangular matrices use {"rows": r, "cols": c, "entries": ...}.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// The contents of a system file; K is absent for Definitions 1 and 2.
struct SystemFile {
  ComplexMatrix hamiltonian;
  std::optional<ComplexMatrix> involution;
  std::vector<ComplexMatrix> charges;
  bool complex_charges = false;
};

/// {"H": <matrix>, "K": <matrix or null>, "charges": [<matrix>...], "complex": bool}
Json system_to_json(const SystemFile& s);
SystemFile system_from_json(const Json& j);
SystemFile to_system_file(const GradedSystem& s);

enum class ModelKind { FreeParticle, Witten, Pauli, Random };

/// {"model", "sites", "dx", "W", "A_field", "dims", "seed"}; unused fields are
/// ignored. Additional optional fields: "B" (symmetric-gauge field strength for
/// pauli when "A_field" is absent), "conjugate" and "rank" (random).
struct ModelSpec {
  ModelKind kind = ModelKind::FreeParticle;
  std::array<std::size_t, 2> sites{0, 0};
  double dx = 1.0;
  std::vector<double> w;
  std::optional<VectorPotential> a_field;
  double b = 0.0;
  std::array<std::size_t, 2> dims{1, 1};
  std::uint64_t seed = 0;
  bool conjugate = false;
  std::optional<std::size_t> rank;
};

ModelSpec model_spec_from_json(const Json& j);
GradedSystem build_model(const ModelSpec& spec, const NumericPolicy& policy);

Json report_to_json(const ValidationReport& r);
Json report_to_json(const SpectralReport& r);
Json report_to_json(const IndexReport& r);

/// Reads and parses a JSON file; ParseError names the path.
Json read_json_file(const std::filesystem::path& path);
/// Writes `j` with two-space indentation and a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace susyqm
