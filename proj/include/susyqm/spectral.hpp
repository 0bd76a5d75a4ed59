#pragma once

#include <cstddef>
#include <vector>

#include "susyqm/matrix.hpp"
#include "susyqm/policy.hpp"

namespace susyqm {

inline constexpr int kDefaultMaxSweeps = 100;

/// Eigenvalues ascending; column k of `eigenvectors` belongs to eigenvalues[k].
/// Inside a degenerate cluster the order carries no meaning.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Orthonormal columns spanning the numerical kernel of a matrix.
struct KernelBasis {
  std::size_t dim_kernel = 0;
  ComplexMatrix basis;
  /// Largest singular value of the analysed matrix.
  double spectral_radius = 0.0;
  /// Singular values within two decades of the cutoff on either side. Non-empty
  /// means the kernel dimension depends on kernel_tol.
  std::vector<double> borderline;
};

/// Cyclic Jacobi diagonalisation of a Hermitian matrix by 2×2 unitary
/// rotations. Sweeps until the off-diagonal Frobenius norm is at most
/// eigensolver_tol · ‖A‖_F.
///
/// Throws NotHermitianError for non-Hermitian input and ConvergenceError after
/// `max_sweeps` sweeps without convergence.
EigenDecomposition eigh(const ComplexMatrix& a, const NumericPolicy& policy,
                        int max_sweeps = kDefaultMaxSweeps);

/// Same iteration as eigh without accumulating eigenvectors.
std::vector<double> eigvalsh(const ComplexMatrix& a, const NumericPolicy& policy,
                             int max_sweeps = kDefaultMaxSweeps);

/// Singular values of A (any shape) together with the right singular vectors,
/// computed by one-sided Jacobi, i.e. Jacobi rotations of the implicit Gram
/// matrix A†A. `singular_values[k]` pairs with column k of `right_vectors`;
/// values are sorted descending.
struct SingularSystem {
  std::vector<double> singular_values;
  ComplexMatrix right_vectors;
};

SingularSystem singular_system(const ComplexMatrix& a, const NumericPolicy& policy,
                               int max_sweeps = kDefaultMaxSweeps);

/// Kernel of A through A†A: right singular vectors with singular value at most
/// kernel_tol · σ_max(A). The zero matrix has a full kernel.
KernelBasis kernel_basis(const ComplexMatrix& a, const NumericPolicy& policy);

/// Pseudo-inverse of a Hermitian Q on (ker Q)^⊥: eigenvalues with
/// |λ| > kernel_tol · ρ(Q) are reciprocated, the rest are zeroed.
ComplexMatrix inverse_on_complement(const ComplexMatrix& q, const NumericPolicy& policy);

/// max |λ| of a Hermitian matrix.
double spectral_radius(const ComplexMatrix& hermitian, const NumericPolicy& policy);

}  // namespace susyqm
