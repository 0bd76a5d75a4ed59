#pragma once

namespace susyqm {

/// Tolerances shared by every check. All are relative; see each field.
struct NumericPolicy {
  /// ‖A − A†‖_F against max(1, ‖A‖_F).
  double hermiticity_tol = 1e-10;
  /// Residual of an (anti)commutation relation against the operand scale.
  double algebra_tol = 1e-10;
  /// Singular value / eigenvalue cutoff relative to the spectral radius.
  double kernel_tol = 1e-8;
  /// Jacobi stops once the off-diagonal Frobenius norm drops below this times ‖A‖_F.
  double eigensolver_tol = 1e-12;
  /// Relative window for matching bosonic and fermionic eigenvalues.
  double pairing_tol = 1e-8;

  /// Throws std::invalid_argument unless every tolerance lies in (0, 1e-3].
  void validate() const;
};

}  // namespace susyqm
