#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "susyqm/grading.hpp"
#include "susyqm/matrix.hpp"
#include "susyqm/policy.hpp"
#include "susyqm/validation.hpp"

namespace susyqm {

/// (H, [Q1..QN]) with self-adjoint charges, or (H, [q1..qM]) with complex
/// charges when `complex_charges` is set. Produced by validate_def1/2.
struct SuperchargeSystem {
  ComplexMatrix hamiltonian;
  std::vector<ComplexMatrix> charges;
  bool complex_charges = false;
  ValidationReport report;
};

/// A supercharge system together with an involution anticommuting with every
/// charge. Produced by validate_def3/4.
struct GradedSystem {
  ComplexMatrix hamiltonian;
  Involution involution;
  std::vector<ComplexMatrix> charges;
  bool complex_charges = false;
  ValidationReport report;
};

// Validators. The check_* forms only report; the validate_* forms throw
// ValidationError carrying the same report when any relation fails. Shape
// mismatches throw DimensionError from either form.

/// Self-adjoint charges with {Qi, Qj} = 2δij H and H ≠ 0; [H, Qi] = 0 is
/// recorded as a corollary.
ValidationReport check_def1(const ComplexMatrix& h, const std::vector<ComplexMatrix>& charges,
                            const NumericPolicy& policy);
SuperchargeSystem validate_def1(const ComplexMatrix& h, const std::vector<ComplexMatrix>& charges,
                                const NumericPolicy& policy);

/// Non-self-adjoint charges with {qi, qj†} = 2δij H and {qi, qj} = 0, plus the
/// corollaries {qi†, qj†} = 0 and [H, qi] = [H, qi†] = 0.
ValidationReport check_def2(const ComplexMatrix& h, const std::vector<ComplexMatrix>& charges,
                            const NumericPolicy& policy);
SuperchargeSystem validate_def2(const ComplexMatrix& h, const std::vector<ComplexMatrix>& charges,
                                const NumericPolicy& policy);

/// check_def1 relations, K a non-trivial involution, {K, Qi} = 0, [H, K] = 0.
ValidationReport check_def3(const ComplexMatrix& h, const ComplexMatrix& k,
                            const std::vector<ComplexMatrix>& charges,
                            const NumericPolicy& policy);
GradedSystem validate_def3(const ComplexMatrix& h, const ComplexMatrix& k,
                           const std::vector<ComplexMatrix>& charges,
                           const NumericPolicy& policy);

/// check_def2 relations with an involution anticommuting with every qi.
ValidationReport check_def4(const ComplexMatrix& h, const ComplexMatrix& k,
                            const std::vector<ComplexMatrix>& charges,
                            const NumericPolicy& policy);
GradedSystem validate_def4(const ComplexMatrix& h, const ComplexMatrix& k,
                           const std::vector<ComplexMatrix>& charges,
                           const NumericPolicy& policy);

/// q = (Q1 + iQ2)/√2.
ComplexMatrix complex_from_real(const ComplexMatrix& q1, const ComplexMatrix& q2);
/// Q1 = (q + q†)/√2, Q2 = −i(q − q†)/√2.
std::pair<ComplexMatrix, ComplexMatrix> real_from_complex(const ComplexMatrix& q);

enum class ChargeSign { Plus, Minus };

/// Q' = ±iKQ for an n=1 system (K, Q, H = Q²). Both the input system and the
/// resulting n=2 system are validated; the latter failing is a CrossCheckError.
ComplexMatrix second_supercharge(const Involution& k, const ComplexMatrix& q, ChargeSign sign,
                                 const NumericPolicy& policy);

enum class PairingRelation { PlusSign, MinusSign, Fail };
const char* to_string(PairingRelation r);

/// Whether Q2 = −iKQ1 (MinusSign) or Q2 = +iKQ1 (PlusSign). Requires (K, [Q1, Q2])
/// to be a valid n=2 graded system with H = Q1²; throws ValidationError if not.
/// Valid systems whose two charges are related by neither sign report Fail.
PairingRelation check_pairing_relation(const ComplexMatrix& k, const ComplexMatrix& q1,
                                       const ComplexMatrix& q2, const NumericPolicy& policy);

struct ConstructedInvolution {
  Involution involution;
  /// d = dim ker Q1.
  std::size_t kernel_dim = 0;
  std::size_t d_plus = 0;
  std::size_t d_minus() const { return kernel_dim - d_plus; }
  /// Eigenvalues of Q1 within two decades of the kernel cutoff.
  std::vector<double> borderline_eigenvalues;
};

/// K = iQ2 Q1⁺ on (ker Q1)^⊥, extended on ker Q1 by +1 on the first `d_plus`
/// kernel eigenvectors of Q1 and −1 on the rest (default d_plus = d).
/// Requires (Q1, Q2) to satisfy def1 with N = 2 and H = Q1².
ConstructedInvolution construct_involution(const ComplexMatrix& q1, const ComplexMatrix& q2,
                                           std::optional<std::size_t> d_plus,
                                           const NumericPolicy& policy);

/// Fermion-number form of an n=1 (or m=1) system in the grading basis:
/// Q = [[0, A†], [A, 0]], H = diag(A†A, AA†). Multi-charge systems use their
/// first charge; a complex charge q enters through (q + q†)/√2.
struct StandardRepresentation {
  GradingBasis basis;
  /// dim_fermionic × dim_bosonic map H_b → H_f.
  ComplexMatrix a_operator;
  ComplexMatrix h_plus;
  ComplexMatrix h_minus;
};

StandardRepresentation standard_representation(const GradedSystem& system,
                                               const NumericPolicy& policy);

/// a1 = (A + A†)/2, a2 = (A − A†)/(2i), so A = a1 + i a2.
std::pair<ComplexMatrix, ComplexMatrix> hermitian_parts(const ComplexMatrix& a);

/// Q1 = σ1⊗a1 + σ2⊗a2, Q2 = σ2⊗a1 − σ1⊗a2. Throws NotHermitianError if either
/// part is not Hermitian.
std::pair<ComplexMatrix, ComplexMatrix> charges_from_parts(const ComplexMatrix& a1,
                                                           const ComplexMatrix& a2,
                                                           const NumericPolicy& policy);

/// H = I2⊗(a1² + a2²) + σ3⊗(i[a1, a2]).
ComplexMatrix hamiltonian_from_parts(const ComplexMatrix& a1, const ComplexMatrix& a2,
                                     const NumericPolicy& policy);

/// Real 2×2 matrix, row-major.
using Rotation2 = std::array<std::array<double, 2>, 2>;

Rotation2 rotation(double angle);
Rotation2 reflection(double angle);

/// Q'i = Σj O_ij Qj on a two-charge system; the result is revalidated against
/// the unchanged Hamiltonian.
SuperchargeSystem reparametrize(const SuperchargeSystem& system, const Rotation2& o,
                                const NumericPolicy& policy);
GradedSystem reparametrize(const GradedSystem& system, const Rotation2& o,
                           const NumericPolicy& policy);

/// q → e^{iθ} q on every complex charge.
GradedSystem rephase(const GradedSystem& system, double theta, const NumericPolicy& policy);

}  // namespace susyqm
