#pragma once

#include <cstddef>
#include <vector>

#include "susyqm/matrix.hpp"
#include "susyqm/policy.hpp"
#include "susyqm/susy.hpp"

namespace susyqm {

struct EigenPair {
  std::size_t bosonic_index = 0;
  std::size_t fermionic_index = 0;
  double bosonic_value = 0.0;
  double fermionic_value = 0.0;
  double relative_gap = 0.0;
};

/// Sector spectra of H and their pairing.
struct SpectralReport {
  std::vector<double> bosonic_eigenvalues;
  std::vector<double> fermionic_eigenvalues;
  std::vector<EigenPair> pairs;
  std::size_t unpaired_bosonic_zero_modes = 0;
  std::size_t unpaired_fermionic_zero_modes = 0;
  int witten_index = 0;
  /// Eigenvalues at or below this count as zero modes.
  double zero_threshold = 0.0;
  /// Indices into `pairs` whose gap is within a decade of pairing_tol.
  std::vector<std::size_t> borderline_pairs;
};

/// Diagonalises both sectors and matches every positive eigenvalue with one
/// of the other sector (relative gap ≤ pairing_tol). Zero modes, eigenvalues
/// ≤ kernel_tol · ρ(H), are never paired. Throws PairingError naming the worst
/// orphan when a positive eigenvalue has no partner.
SpectralReport spectral_pairing_report(const GradedSystem& system, const NumericPolicy& policy);

/// Both lines of the index formula, dim ker A − dim ker A† and
/// dim ker H₊ − dim ker H₋.
struct IndexReport {
  int index = 0;
  std::size_t kernel_a = 0;
  std::size_t kernel_a_dagger = 0;
  std::size_t kernel_h_plus = 0;
  std::size_t kernel_h_minus = 0;
  /// Singular values near either kernel cutoff.
  std::vector<double> borderline;

  int via_a() const {
    return static_cast<int>(kernel_a) - static_cast<int>(kernel_a_dagger);
  }
  int via_hamiltonian() const {
    return static_cast<int>(kernel_h_plus) - static_cast<int>(kernel_h_minus);
  }
};

/// Throws CrossCheckError when the two formulas disagree, which signals a
/// singular value sitting between the two kernel cutoffs.
IndexReport witten_index(const GradedSystem& system, const NumericPolicy& policy);

/// Both formulas for a bare A: H_b → H_f with H₊ = A†A and H₋ = AA†. Covers
/// A = 0, whose system H = 0 is excluded by the definitions.
IndexReport operator_index(const ComplexMatrix& a, const NumericPolicy& policy);

/// {−d, −d+2, …, d}.
std::vector<int> index_range(std::size_t d);

struct KernelEqualityReport {
  std::size_t kernel_q1 = 0;
  std::size_t kernel_q2 = 0;
  /// ‖Q2 · ker Q1‖_F and ‖Q1 · ker Q2‖_F.
  double residual_q2_on_kernel_q1 = 0.0;
  double residual_q1_on_kernel_q2 = 0.0;
};

/// For self-adjoint Q1, Q2 with Q1² = Q2², checks that the kernels coincide.
/// Throws ValidationError if Q1² ≠ Q2², CrossCheckError if the kernels differ.
KernelEqualityReport kernel_equality_check(const ComplexMatrix& q1, const ComplexMatrix& q2,
                                           const NumericPolicy& policy);

}  // namespace susyqm
