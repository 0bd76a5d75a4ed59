#include "susyqm/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "susyqm/errors.hpp"

namespace susyqm {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const Json& require(const Json& j, const char* key, const std::string& context) {
  if (!j.is_object()) fail(context + ": expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) fail(context + ": missing field \"" + key + "\"");
  return *it;
}

double finite_number(const Json& j, const std::string& context) {
  if (!j.is_number()) fail(context + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(context + ": non-finite value");
  return v;
}

std::size_t count(const Json& j, const std::string& context) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    fail(context + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<double> number_list(const Json& j, const std::string& context) {
  if (!j.is_array()) fail(context + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(finite_number(j[i], context + "[" + std::to_string(i) + "]"));
  return out;
}

std::array<std::size_t, 2> pair_of_counts(const Json& j, const std::string& context) {
  if (j.is_number_integer()) {
    const std::size_t n = count(j, context);
    return {n, n};
  }
  if (!j.is_array() || j.size() != 2) fail(context + ": expected an integer or [a, b]");
  return {count(j[0], context + "[0]"), count(j[1], context + "[1]")};
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (const Complex& z : m.entries()) entries.push_back({z.real(), z.imag()});
  Json out;
  if (m.is_square()) {
    out["dim"] = m.rows();
  } else {
    out["rows"] = m.rows();
    out["cols"] = m.cols();
  }
  out["entries"] = std::move(entries);
  return out;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object()) fail("matrix: expected a JSON object");
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (j.contains("dim")) {
    rows = cols = count(j["dim"], "matrix.dim");
  } else if (j.contains("rows") && j.contains("cols")) {
    rows = count(j["rows"], "matrix.rows");
    cols = count(j["cols"], "matrix.cols");
  } else {
    fail("matrix: missing field \"dim\"");
  }
  const Json& entries = require(j, "entries", "matrix");
  if (!entries.is_array()) fail("matrix.entries: expected an array");
  if (entries.size() != rows * cols) {
    std::ostringstream os;
    os << "matrix.entries: expected " << rows * cols << " entries, found " << entries.size();
    fail(os.str());
  }
  std::vector<Complex> values;
  values.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Json& e = entries[i];
    const std::string ctx = "matrix.entries[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 2) fail(ctx + ": expected [re, im]");
    values.emplace_back(finite_number(e[0], ctx), finite_number(e[1], ctx));
  }
  return ComplexMatrix(rows, cols, std::move(values));
}

Json system_to_json(const SystemFile& s) {
  Json out;
  out["H"] = matrix_to_json(s.hamiltonian);
  out["K"] = s.involution ? matrix_to_json(*s.involution) : Json(nullptr);
  Json charges = Json::array();
  for (const auto& q : s.charges) charges.push_back(matrix_to_json(q));
  out["charges"] = std::move(charges);
  out["complex"] = s.complex_charges;
  return out;
}

SystemFile system_from_json(const Json& j) {
  SystemFile out;
  out.hamiltonian = matrix_from_json(require(j, "H", "system"));
  if (j.contains("K") && !j["K"].is_null()) out.involution = matrix_from_json(j["K"]);
  const Json& charges = require(j, "charges", "system");
  if (!charges.is_array() || charges.empty()) fail("system.charges: expected a nonempty array");
  for (const Json& q : charges) out.charges.push_back(matrix_from_json(q));
  if (j.contains("complex")) {
    if (!j["complex"].is_boolean()) fail("system.complex: expected a boolean");
    out.complex_charges = j["complex"].get<bool>();
  }
  if (!out.hamiltonian.is_square()) fail("system.H: must be square");
  return out;
}

SystemFile to_system_file(const GradedSystem& s) {
  return {s.hamiltonian, s.involution.matrix(), s.charges, s.complex_charges};
}

ModelSpec model_spec_from_json(const Json& j) {
  ModelSpec spec;
  const Json& model = require(j, "model", "model spec");
  if (!model.is_string()) fail("model spec.model: expected a string");
  const std::string name = model.get<std::string>();
  if (name == "free_particle")
    spec.kind = ModelKind::FreeParticle;
  else if (name == "witten")
    spec.kind = ModelKind::Witten;
  else if (name == "pauli")
    spec.kind = ModelKind::Pauli;
  else if (name == "random")
    spec.kind = ModelKind::Random;
  else
    fail("model spec.model: unknown model \"" + name + "\"");

  if (j.contains("dx")) spec.dx = finite_number(j["dx"], "model spec.dx");

  switch (spec.kind) {
    case ModelKind::FreeParticle:
      spec.sites[0] = count(require(j, "sites", "model spec"), "model spec.sites");
      break;
    case ModelKind::Witten:
      spec.sites[0] = count(require(j, "sites", "model spec"), "model spec.sites");
      spec.w = number_list(require(j, "W", "model spec"), "model spec.W");
      break;
    case ModelKind::Pauli:
      spec.sites = pair_of_counts(require(j, "sites", "model spec"), "model spec.sites");
      if (j.contains("A_field")) {
        const Json& a = j["A_field"];
        if (!a.is_array() || a.size() != 2) fail("model spec.A_field: expected [[A_x...], [A_y...]]");
        spec.a_field = VectorPotential{number_list(a[0], "model spec.A_field[0]"),
                                       number_list(a[1], "model spec.A_field[1]")};
      } else if (j.contains("B")) {
        spec.b = finite_number(j["B"], "model spec.B");
      }
      break;
    case ModelKind::Random:
      spec.dims = pair_of_counts(require(j, "dims", "model spec"), "model spec.dims");
      if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
          fail("model spec.seed: expected an integer");
        spec.seed = j["seed"].get<std::uint64_t>();
      }
      if (j.contains("conjugate")) {
        if (!j["conjugate"].is_boolean()) fail("model spec.conjugate: expected a boolean");
        spec.conjugate = j["conjugate"].get<bool>();
      }
      if (j.contains("rank")) spec.rank = count(j["rank"], "model spec.rank");
      break;
  }
  return spec;
}

GradedSystem build_model(const ModelSpec& spec, const NumericPolicy& policy) {
  switch (spec.kind) {
    case ModelKind::FreeParticle:
      return free_particle_lattice({spec.sites[0], spec.dx, Boundary::Periodic}, policy);
    case ModelKind::Witten:
      return witten_model_lattice({spec.sites[0], spec.dx, Boundary::Dirichlet},
                                  SuperpotentialSamples{spec.w}, policy);
    case ModelKind::Pauli: {
      const PlanarLattice lattice{spec.sites[0], spec.sites[1], spec.dx};
      const VectorPotential field = spec.a_field ? *spec.a_field : symmetric_gauge(lattice, spec.b);
      return pauli_lattice(lattice, field, policy);
    }
    case ModelKind::Random:
      return random_graded_system(spec.dims[0], spec.dims[1], spec.seed, policy,
                                  RandomSystemOptions{spec.conjugate, spec.rank});
  }
  throw std::logic_error("build_model: unhandled model kind");
}

Json report_to_json(const ValidationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"relation", c.relation},
                      {"residual", c.residual},
                      {"scale", c.scale},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed}});
  return {{"definition", r.definition},
          {"valid", r.valid()},
          {"max_residual", r.max_residual()},
          {"checks", std::move(checks)}};
}

Json report_to_json(const SpectralReport& r) {
  Json pairs = Json::array();
  for (const auto& p : r.pairs)
    pairs.push_back({{"bosonic_index", p.bosonic_index},
                     {"fermionic_index", p.fermionic_index},
                     {"bosonic_value", p.bosonic_value},
                     {"fermionic_value", p.fermionic_value},
                     {"relative_gap", p.relative_gap}});
  return {{"bosonic_eigenvalues", r.bosonic_eigenvalues},
          {"fermionic_eigenvalues", r.fermionic_eigenvalues},
          {"pairs", std::move(pairs)},
          {"unpaired_bosonic_zero_modes", r.unpaired_bosonic_zero_modes},
          {"unpaired_fermionic_zero_modes", r.unpaired_fermionic_zero_modes},
          {"witten_index", r.witten_index},
          {"zero_threshold", r.zero_threshold},
          {"borderline_pairs", r.borderline_pairs}};
}

Json report_to_json(const IndexReport& r) {
  return {{"witten_index", r.index},
          {"kernel_a", r.kernel_a},
          {"kernel_a_dagger", r.kernel_a_dagger},
          {"kernel_h_plus", r.kernel_h_plus},
          {"kernel_h_minus", r.kernel_h_minus},
          {"index_via_a", r.via_a()},
          {"index_via_hamiltonian", r.via_hamiltonian()},
          {"borderline", r.borderline}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    // parse_error, or out_of_range for literals such as 1e400.
    fail(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace susyqm
