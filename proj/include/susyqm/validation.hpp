#pragma once

#include <optional>
#include <string>
#include <vector>

#include "susyqm/errors.hpp"
#include "susyqm/matrix.hpp"

namespace susyqm {

/// One checked matrix relation, e.g. "{Q1,Q2}=0".
struct RelationCheck {
  std::string relation;
  /// Frobenius norm of (lhs − rhs).
  double residual = 0.0;
  /// Operand scale the residual is measured against (at least 1).
  double scale = 1.0;
  double tolerance = 0.0;
  bool passed = true;

  double relative() const { return residual / scale; }
};

/// Every relation a validator examined, in the order it examined them.
struct ValidationReport {
  std::string definition;
  std::vector<RelationCheck> checks;

  bool valid() const;
  /// Largest relative residual over all checks.
  double max_residual() const;
  std::vector<std::string> failed_relations() const;
  bool failed(const std::string& relation) const;
  const RelationCheck* find(const std::string& relation) const;
  /// Multi-line human summary, one relation per line.
  std::string describe() const;

  /// Records ‖residual‖_F ≤ tolerance · max(1, scale).
  void add(std::string relation, const ComplexMatrix& residual, double scale, double tolerance);
  /// Records a yes/no condition; the residual is kept only when it fails.
  void add_condition(std::string relation, bool passed, double residual);
  void append(const ValidationReport& other);
};

/// Thrown by the validate_* family; carries the full report.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace susyqm
