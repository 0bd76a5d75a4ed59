#include "susyqm/grading.hpp"

#include <cmath>

#include "susyqm/errors.hpp"
#include "susyqm/spectral.hpp"

namespace susyqm {

ValidationReport check_involution(const ComplexMatrix& k, const NumericPolicy& policy) {
  if (!k.is_square()) throw DimensionError("involution must be square");
  const std::size_t n = k.rows();
  ValidationReport report;
  report.definition = "involution";

  report.add("K hermitian", k - adjoint(k), residual_norm(k), policy.hermiticity_tol);
  report.add("K^2=I", k * k - ComplexMatrix::identity(n), static_cast<double>(n),
             policy.algebra_tol);

  // With K Hermitian and K² = I the spectrum is ±1, so tr K = d_b − d_f.
  const double t = trace(k).real();
  const long dim_b = std::lround((static_cast<double>(n) + t) / 2.0);
  const bool nontrivial = dim_b >= 1 && dim_b <= static_cast<long>(n) - 1;
  report.add_condition("K nontrivial", nontrivial, std::abs(std::abs(t) - static_cast<double>(n)));
  return report;
}

Involution validate_involution(const ComplexMatrix& k, const NumericPolicy& policy) {
  ValidationReport report = check_involution(k, policy);
  if (!report.valid()) throw ValidationError(std::move(report));
  const double t = trace(k).real();
  const auto dim_b =
      static_cast<std::size_t>(std::lround((static_cast<double>(k.rows()) + t) / 2.0));
  return Involution(k, dim_b);
}

std::pair<ComplexMatrix, ComplexMatrix> projectors(const Involution& k) {
  const ComplexMatrix id = ComplexMatrix::identity(k.dim());
  return {0.5 * (id + k.matrix()), 0.5 * (id - k.matrix())};
}

std::pair<ComplexVector, ComplexVector> decompose_vector(const Involution& k,
                                                         std::span<const Complex> phi) {
  if (phi.size() != k.dim()) throw DimensionError("decompose_vector: length mismatch");
  const ComplexVector kphi = k.matrix() * phi;
  ComplexVector even(phi.size());
  ComplexVector odd(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    even[i] = 0.5 * (phi[i] + kphi[i]);
    odd[i] = phi[i] - even[i];
  }
  return {std::move(even), std::move(odd)};
}

const char* to_string(Parity p) {
  switch (p) {
    case Parity::Even:
      return "even";
    case Parity::Odd:
      return "odd";
    case Parity::Mixed:
      return "mixed";
  }
  return "?";
}

Parity classify_operator(const Involution& k, const ComplexMatrix& m,
                         const NumericPolicy& policy) {
  if (m.rows() != k.dim() || m.cols() != k.dim())
    throw DimensionError("classify_operator: dimension mismatch");
  const double norm = residual_norm(m);
  if (norm == 0.0) return Parity::Even;
  const double limit = policy.algebra_tol * norm;
  if (residual_norm(commutator(k.matrix(), m)) <= limit) return Parity::Even;
  if (residual_norm(anticommutator(k.matrix(), m)) <= limit) return Parity::Odd;
  return Parity::Mixed;
}

GradingBasis grading_basis(const Involution& k, const NumericPolicy& policy) {
  const EigenDecomposition ed = eigh(k.matrix(), policy);
  const std::size_t n = k.dim();
  GradingBasis out;
  out.unitary = ComplexMatrix(n);
  std::size_t col = 0;
  for (int sign : {+1, -1}) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((ed.eigenvalues[j] > 0.0) != (sign > 0)) continue;
      for (std::size_t r = 0; r < n; ++r) out.unitary(r, col) = ed.eigenvectors(r, j);
      ++col;
    }
    if (sign > 0) out.dim_bosonic = col;
  }
  out.dim_fermionic = n - out.dim_bosonic;
  if (out.dim_bosonic != k.dim_bosonic())
    throw CrossCheckError("grading_basis: eigenvalue count disagrees with trace of K");
  return out;
}

OperatorBlocks block_extract(const GradingBasis& basis, const ComplexMatrix& m) {
  const std::size_t n = basis.unitary.rows();
  if (m.rows() != n || m.cols() != n) throw DimensionError("block_extract: dimension mismatch");
  const ComplexMatrix rotated = adjoint(basis.unitary) * m * basis.unitary;
  const std::size_t nb = basis.dim_bosonic;
  const std::size_t nf = basis.dim_fermionic;
  return {block(rotated, 0, 0, nb, nb), block(rotated, 0, nb, nb, nf),
          block(rotated, nb, 0, nf, nb), block(rotated, nb, nb, nf, nf)};
}

}  // namespace susyqm
