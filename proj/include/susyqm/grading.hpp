#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "susyqm/matrix.hpp"
#include "susyqm/policy.hpp"
#include "susyqm/validation.hpp"

namespace susyqm {

/// A validated Z2-grading operator: Hermitian, K² = I, and K ≠ ±I.
/// Obtainable only through validate_involution.
class Involution {
 public:
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }
  /// Multiplicity of the eigenvalue +1.
  std::size_t dim_bosonic() const noexcept { return dim_bosonic_; }
  /// Multiplicity of the eigenvalue −1.
  std::size_t dim_fermionic() const noexcept { return dim() - dim_bosonic_; }

 private:
  Involution(ComplexMatrix matrix, std::size_t dim_bosonic)
      : matrix_(std::move(matrix)), dim_bosonic_(dim_bosonic) {}
  friend Involution validate_involution(const ComplexMatrix& k, const NumericPolicy& policy);

  ComplexMatrix matrix_;
  std::size_t dim_bosonic_;
};

/// Hermiticity, K² = I and non-triviality, as individual relations.
ValidationReport check_involution(const ComplexMatrix& k, const NumericPolicy& policy);

/// Throws ValidationError naming the failed relation.
Involution validate_involution(const ComplexMatrix& k, const NumericPolicy& policy);

/// Π± = (I ± K) / 2.
std::pair<ComplexMatrix, ComplexMatrix> projectors(const Involution& k);

/// φ_b = (φ + Kφ)/2 and φ_f = (φ − Kφ)/2.
std::pair<ComplexVector, ComplexVector> decompose_vector(const Involution& k,
                                                         std::span<const Complex> phi);

enum class Parity { Even, Odd, Mixed };
const char* to_string(Parity p);

/// Even if M commutes with K, Odd if it anticommutes, Mixed otherwise.
/// The zero operator is Even.
Parity classify_operator(const Involution& k, const ComplexMatrix& m,
                         const NumericPolicy& policy);

/// Unitary U with U†KU = diag(+1…, −1…). Columns: +1 eigenvectors first, each
/// group in eigensolver order. Treat the basis as opaque beyond block position.
struct GradingBasis {
  ComplexMatrix unitary;
  std::size_t dim_bosonic = 0;
  std::size_t dim_fermionic = 0;
};

GradingBasis grading_basis(const Involution& k, const NumericPolicy& policy);

/// U†MU = [[a, b], [c, d]] with a acting on the bosonic sector.
struct OperatorBlocks {
  ComplexMatrix a;  // b→b
  ComplexMatrix b;  // f→b
  ComplexMatrix c;  // b→f
  ComplexMatrix d;  // f→f
};

OperatorBlocks block_extract(const GradingBasis& basis, const ComplexMatrix& m);

}  // namespace susyqm
