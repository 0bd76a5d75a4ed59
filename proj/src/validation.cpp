#include "susyqm/validation.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace susyqm {

namespace {

std::string failure_message(const ValidationReport& report) {
  std::ostringstream os;
  os << report.definition << " validation failed:";
  for (const auto& c : report.checks) {
    if (c.passed) continue;
    os << " " << c.relation << " (residual " << std::setprecision(3) << c.relative() << ")";
  }
  return os.str();
}

}  // namespace

bool ValidationReport::valid() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

double ValidationReport::max_residual() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.relative());
  return m;
}

std::vector<std::string> ValidationReport::failed_relations() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c.relation);
  return out;
}

bool ValidationReport::failed(const std::string& relation) const {
  const RelationCheck* c = find(relation);
  return c != nullptr && !c->passed;
}

const RelationCheck* ValidationReport::find(const std::string& relation) const {
  for (const auto& c : checks)
    if (c.relation == relation) return &c;
  return nullptr;
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  os << definition << ": " << (valid() ? "valid" : "INVALID") << "\n";
  for (const auto& c : checks) {
    os << "  " << (c.passed ? "ok   " : "FAIL ") << std::left << std::setw(24) << c.relation
       << " residual " << std::scientific << std::setprecision(3) << c.relative() << "\n";
  }
  return os.str();
}

void ValidationReport::add(std::string relation, const ComplexMatrix& residual, double scale,
                           double tolerance) {
  RelationCheck c;
  c.relation = std::move(relation);
  c.residual = residual_norm(residual);
  c.scale = std::max(1.0, scale);
  c.tolerance = tolerance;
  c.passed = c.residual <= tolerance * c.scale;
  checks.push_back(std::move(c));
}

void ValidationReport::add_condition(std::string relation, bool passed, double residual) {
  RelationCheck c;
  c.relation = std::move(relation);
  c.residual = passed ? 0.0 : residual;
  c.passed = passed;
  checks.push_back(std::move(c));
}

void ValidationReport::append(const ValidationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

ValidationError::ValidationError(ValidationReport report)
    : Error(failure_message(report)), report_(std::move(report)) {}

}  // namespace susyqm
