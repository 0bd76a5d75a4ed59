#include "susyqm/susy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "susyqm/errors.hpp"
#include "susyqm/spectral.hpp"

namespace susyqm {

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::string name(const char* symbol, std::size_t i) { return symbol + std::to_string(i + 1); }

void require_shapes(const ComplexMatrix& h, const std::vector<ComplexMatrix>& charges,
                    const ComplexMatrix* k) {
  if (!h.is_square()) throw DimensionError("Hamiltonian must be square");
  if (charges.empty()) throw DimensionError("at least one supercharge is required");
  const std::size_t n = h.rows();
  for (const auto& q : charges)
    if (q.rows() != n || q.cols() != n)
      throw DimensionError("supercharge and Hamiltonian dimensions differ");
  if (k != nullptr && (k->rows() != n || k->cols() != n))
    throw DimensionError("involution and Hamiltonian dimensions differ");
}

void add_hamiltonian_checks(ValidationReport& report, const ComplexMatrix& h,
                            const NumericPolicy& policy) {
  const double hn = residual_norm(h);
  report.add("H hermitian", h - adjoint(h), hn, policy.hermiticity_tol);
  report.add_condition("H!=0", hn > policy.algebra_tol, hn);
}

void add_grading_checks(ValidationReport& report, const ComplexMatrix& h, const ComplexMatrix& k,
                        const std::vector<ComplexMatrix>& charges, const char* symbol,
                        const NumericPolicy& policy) {
  report.append(check_involution(k, policy));
  for (std::size_t i = 0; i < charges.size(); ++i) {
    report.add("{K," + name(symbol, i) + "}=0", anticommutator(k, charges[i]),
               2.0 * residual_norm(charges[i]), policy.algebra_tol);
  }
  report.add("[H,K]=0", commutator(h, k), 2.0 * residual_norm(h), policy.algebra_tol);
}

template <typename Report>
GradedSystem make_graded(const ComplexMatrix& h, const ComplexMatrix& k,
                         const std::vector<ComplexMatrix>& charges, bool complex_charges,
                         const NumericPolicy& policy, Report check) {
  ValidationReport report = check(h, k, charges, policy);
  if (!report.valid()) throw ValidationError(std::move(report));
  return GradedSystem{h, validate_involution(k, policy), charges, complex_charges,
                      std::move(report)};
}

ComplexMatrix apply_rotation(const Rotation2& o, const std::vector<ComplexMatrix>& charges,
                             std::size_t row) {
  return Complex(o[row][0]) * charges[0] + Complex(o[row][1]) * charges[1];
}

void require_orthogonal(const Rotation2& o, const NumericPolicy& policy) {
  double residual = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double dot = o[0][i] * o[0][j] + o[1][i] * o[1][j];
      residual += std::pow(dot - (i == j ? 1.0 : 0.0), 2);
    }
  if (std::sqrt(residual) > policy.algebra_tol)
    throw std::invalid_argument("reparametrize: matrix is not orthogonal");
}

}  // namespace

ValidationReport check_def1(const ComplexMatrix& h, const std::vector<ComplexMatrix>& charges,
                            const NumericPolicy& policy) {
  require_shapes(h, charges, nullptr);
  ValidationReport report;
  report.definition = "def1";
  add_hamiltonian_checks(report, h, policy);
  const double hn = residual_norm(h);

  std::vector<double> norms;
  for (std::size_t i = 0; i < charges.size(); ++i) {
    norms.push_back(residual_norm(charges[i]));
    report.add(name("Q", i) + " hermitian", charges[i] - adjoint(charges[i]), norms[i],
               policy.hermiticity_tol);
  }
  for (std::size_t i = 0; i < charges.size(); ++i) {
    for (std::size_t j = i; j < charges.size(); ++j) {
      ComplexMatrix r = anticommutator(charges[i], charges[j]);
      std::string rel = "{" + name("Q", i) + "," + name("Q", j) + "}=";
      if (i == j) {
        r -= 2.0 * h;
        rel += "2H";
      } else {
        rel += "0";
      }
      report.add(rel, r, std::max(2.0 * norms[i] * norms[j], 2.0 * hn), policy.algebra_tol);
    }
  }
  for (std::size_t i = 0; i < charges.size(); ++i) {
    report.add("[H," + name("Q", i) + "]=0", commutator(h, charges[i]), 2.0 * hn * norms[i],
               policy.algebra_tol);
  }
  return report;
}

SuperchargeSystem validate_def1(const ComplexMatrix& h, const std::vector<ComplexMatrix>& charges,
                                const NumericPolicy& policy) {
  ValidationReport report = check_def1(h, charges, policy);
  if (!report.valid()) throw ValidationError(std::move(report));
  return SuperchargeSystem{h, charges, false, std::move(report)};
}

ValidationReport check_def2(const ComplexMatrix& h, const std::vector<ComplexMatrix>& charges,
                            const NumericPolicy& policy) {
  require_shapes(h, charges, nullptr);
  ValidationReport report;
  report.definition = "def2";
  add_hamiltonian_checks(report, h, policy);
  const double hn = residual_norm(h);

  std::vector<double> norms;
  std::vector<ComplexMatrix> daggers;
  for (std::size_t i = 0; i < charges.size(); ++i) {
    norms.push_back(residual_norm(charges[i]));
    daggers.push_back(adjoint(charges[i]));
    // A self-adjoint q would give 2H = {q, q} = 0.
    const double skew = residual_norm(charges[i] - daggers[i]);
    report.add_condition(name("q", i) + " not hermitian", !is_hermitian(charges[i], policy),
                         skew / std::max(1.0, norms[i]));
  }
  for (std::size_t i = 0; i < charges.size(); ++i) {
    for (std::size_t j = i; j < charges.size(); ++j) {
      const double scale = std::max(2.0 * norms[i] * norms[j], 2.0 * hn);
      const std::string qi = name("q", i);
      const std::string qj = name("q", j);
      ComplexMatrix mixed = anticommutator(charges[i], daggers[j]);
      if (i == j) {
        mixed -= 2.0 * h;
        report.add("{" + qi + "," + qj + "^dag}=2H", mixed, scale, policy.algebra_tol);
      } else {
        report.add("{" + qi + "," + qj + "^dag}=0", mixed, scale, policy.algebra_tol);
      }
      report.add("{" + qi + "," + qj + "}=0", anticommutator(charges[i], charges[j]), scale,
                 policy.algebra_tol);
      report.add("{" + qi + "^dag," + qj + "^dag}=0", anticommutator(daggers[i], daggers[j]),
                 scale, policy.algebra_tol);
    }
  }
  for (std::size_t i = 0; i < charges.size(); ++i) {
    const double scale = 2.0 * hn * norms[i];
    report.add("[H," + name("q", i) + "]=0", commutator(h, charges[i]), scale,
               policy.algebra_tol);
    report.add("[H," + name("q", i) + "^dag]=0", commutator(h, daggers[i]), scale,
               policy.algebra_tol);
  }
  return report;
}

SuperchargeSystem validate_def2(const ComplexMatrix& h, const std::vector<ComplexMatrix>& charges,
                                const NumericPolicy& policy) {
  ValidationReport report = check_def2(h, charges, policy);
  if (!report.valid()) throw ValidationError(std::move(report));
  return SuperchargeSystem{h, charges, true, std::move(report)};
}

ValidationReport check_def3(const ComplexMatrix& h, const ComplexMatrix& k,
                            const std::vector<ComplexMatrix>& charges,
                            const NumericPolicy& policy) {
  require_shapes(h, charges, &k);
  ValidationReport report = check_def1(h, charges, policy);
  report.definition = "def3";
  add_grading_checks(report, h, k, charges, "Q", policy);
  return report;
}

GradedSystem validate_def3(const ComplexMatrix& h, const ComplexMatrix& k,
                           const std::vector<ComplexMatrix>& charges,
                           const NumericPolicy& policy) {
  return make_graded(h, k, charges, false, policy, check_def3);
}

ValidationReport check_def4(const ComplexMatrix& h, const ComplexMatrix& k,
                            const std::vector<ComplexMatrix>& charges,
                            const NumericPolicy& policy) {
  require_shapes(h, charges, &k);
  ValidationReport report = check_def2(h, charges, policy);
  report.definition = "def4";
  add_grading_checks(report, h, k, charges, "q", policy);
  return report;
}

GradedSystem validate_def4(const ComplexMatrix& h, const ComplexMatrix& k,
                           const std::vector<ComplexMatrix>& charges,
                           const NumericPolicy& policy) {
  return make_graded(h, k, charges, true, policy, check_def4);
}

ComplexMatrix complex_from_real(const ComplexMatrix& q1, const ComplexMatrix& q2) {
  if (q1.rows() != q2.rows() || q1.cols() != q2.cols())
    throw DimensionError("complex_from_real: dimension mismatch");
  return Complex(kInvSqrt2) * (q1 + kI * q2);
}

std::pair<ComplexMatrix, ComplexMatrix> real_from_complex(const ComplexMatrix& q) {
  if (!q.is_square()) throw DimensionError("real_from_complex: charge must be square");
  const ComplexMatrix qd = adjoint(q);
  return {Complex(kInvSqrt2) * (q + qd), Complex(0.0, -kInvSqrt2) * (q - qd)};
}

ComplexMatrix second_supercharge(const Involution& k, const ComplexMatrix& q, ChargeSign sign,
                                 const NumericPolicy& policy) {
  const ComplexMatrix h = q * q;
  validate_def3(h, k.matrix(), {q}, policy);
  const Complex factor = sign == ChargeSign::Plus ? kI : -kI;
  ComplexMatrix q_prime = factor * (k.matrix() * q);
  const ValidationReport report = check_def3(h, k.matrix(), {q, q_prime}, policy);
  if (!report.valid()) {
    throw CrossCheckError("second_supercharge: ±iKQ failed the n=2 relations\n" +
                          report.describe());
  }
  return q_prime;
}

const char* to_string(PairingRelation r) {
  switch (r) {
    case PairingRelation::PlusSign:
      return "plus";
    case PairingRelation::MinusSign:
      return "minus";
    case PairingRelation::Fail:
      return "fail";
  }
  return "?";
}

PairingRelation check_pairing_relation(const ComplexMatrix& k, const ComplexMatrix& q1,
                                       const ComplexMatrix& q2, const NumericPolicy& policy) {
  validate_def3(q1 * q1, k, {q1, q2}, policy);
  const ComplexMatrix ikq1 = kI * (k * q1);
  const double scale = std::max(1.0, residual_norm(q2));
  if (residual_norm(q2 + ikq1) <= policy.algebra_tol * scale) return PairingRelation::MinusSign;
  if (residual_norm(q2 - ikq1) <= policy.algebra_tol * scale) return PairingRelation::PlusSign;
  return PairingRelation::Fail;
}

ConstructedInvolution construct_involution(const ComplexMatrix& q1, const ComplexMatrix& q2,
                                           std::optional<std::size_t> d_plus,
                                           const NumericPolicy& policy) {
  const ComplexMatrix h = q1 * q1;
  validate_def1(h, {q1, q2}, policy);

  // Q1 is Hermitian, so its eigenvectors split into a kernel basis and an
  // eigenbasis of (ker Q1)^⊥ on which Q1 is inverted.
  const EigenDecomposition ed = eigh(q1, policy);
  const std::size_t n = ed.eigenvalues.size();
  double rho = 0.0;
  for (double v : ed.eigenvalues) rho = std::max(rho, std::abs(v));
  const double cutoff = policy.kernel_tol * rho;

  std::vector<std::size_t> kernel;
  std::vector<double> borderline;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = std::abs(ed.eigenvalues[j]);
    if (a <= cutoff) kernel.push_back(j);
    if (a > 0.0 && a >= 1e-2 * cutoff && a <= 1e2 * cutoff) borderline.push_back(ed.eigenvalues[j]);
  }
  const std::size_t d = kernel.size();
  // H ≠ 0 was validated, so Q1 cannot vanish entirely.
  if (d == n) throw CrossCheckError("construct_involution: Q1 has a full numerical kernel");
  const std::size_t plus = d_plus.value_or(d);
  if (plus > d) {
    std::ostringstream os;
    os << "construct_involution: d_plus = " << plus << " exceeds dim ker Q1 = " << d;
    throw std::invalid_argument(os.str());
  }

  // Q1⁺ restricted to the complement, then K = iQ2Q1⁺ there.
  ComplexMatrix pinv(n);
  ComplexMatrix kernel_part(n);
  std::size_t seen = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const bool in_kernel = std::abs(ed.eigenvalues[j]) <= cutoff;
    const double weight = in_kernel ? (seen++ < plus ? 1.0 : -1.0) : 1.0 / ed.eigenvalues[j];
    ComplexMatrix& target = in_kernel ? kernel_part : pinv;
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = weight * ed.eigenvectors(r, j);
      if (vr == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) target(r, c) += vr * std::conj(ed.eigenvectors(c, j));
    }
  }
  const ComplexMatrix k = kI * (q2 * pinv) + kernel_part;

  const ValidationReport report = check_def3(h, k, {q1, q2}, policy);
  if (!report.valid()) {
    throw CrossCheckError("construct_involution: constructed K fails the n=2 relations\n" +
                          report.describe());
  }
  if (check_pairing_relation(k, q1, q2, policy) != PairingRelation::MinusSign)
    throw CrossCheckError("construct_involution: Q2 = -iKQ1 does not hold for constructed K");

  return ConstructedInvolution{validate_involution(k, policy), d, plus, std::move(borderline)};
}

StandardRepresentation standard_representation(const GradedSystem& system,
                                               const NumericPolicy& policy) {
  const ComplexMatrix& first = system.charges.front();
  const ComplexMatrix q =
      system.complex_charges ? real_from_complex(first).first : first;

  StandardRepresentation out;
  out.basis = grading_basis(system.involution, policy);
  const OperatorBlocks qb = block_extract(out.basis, q);
  const double qscale = std::max(1.0, residual_norm(q));
  if (residual_norm(qb.a) > policy.algebra_tol * qscale ||
      residual_norm(qb.d) > policy.algebra_tol * qscale) {
    ValidationReport report;
    report.definition = "standard representation";
    report.add("charge odd (b-b block)", qb.a, qscale, policy.algebra_tol);
    report.add("charge odd (f-f block)", qb.d, qscale, policy.algebra_tol);
    throw ValidationError(std::move(report));
  }
  out.a_operator = qb.c;

  const OperatorBlocks hb = block_extract(out.basis, system.hamiltonian);
  out.h_plus = hb.a;
  out.h_minus = hb.d;

  const double hscale = std::max(1.0, residual_norm(system.hamiltonian));
  const ComplexMatrix a_dag = adjoint(out.a_operator);
  const double mismatch = std::max({residual_norm(out.h_plus - a_dag * out.a_operator),
                                    residual_norm(out.h_minus - out.a_operator * a_dag),
                                    residual_norm(hb.b), residual_norm(hb.c)});
  if (mismatch > policy.algebra_tol * hscale) {
    std::ostringstream os;
    os << "standard_representation: H blocks differ from (A†A, AA†) by " << mismatch / hscale;
    throw CrossCheckError(os.str());
  }
  return out;
}

std::pair<ComplexMatrix, ComplexMatrix> hermitian_parts(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("hermitian_parts: operator must be square");
  const ComplexMatrix ad = adjoint(a);
  return {0.5 * (a + ad), Complex(0.0, -0.5) * (a - ad)};
}

std::pair<ComplexMatrix, ComplexMatrix> charges_from_parts(const ComplexMatrix& a1,
                                                           const ComplexMatrix& a2,
                                                           const NumericPolicy& policy) {
  if (a1.rows() != a2.rows() || a1.cols() != a2.cols())
    throw DimensionError("charges_from_parts: dimension mismatch");
  if (!is_hermitian(a1, policy) || !is_hermitian(a2, policy))
    throw NotHermitianError("charges_from_parts: parts must be Hermitian");
  const ComplexMatrix s1 = pauli::sigma1();
  const ComplexMatrix s2 = pauli::sigma2();
  return {kron(s1, a1) + kron(s2, a2), kron(s2, a1) - kron(s1, a2)};
}

ComplexMatrix hamiltonian_from_parts(const ComplexMatrix& a1, const ComplexMatrix& a2,
                                     const NumericPolicy& policy) {
  if (a1.rows() != a2.rows() || a1.cols() != a2.cols())
    throw DimensionError("hamiltonian_from_parts: dimension mismatch");
  if (!is_hermitian(a1, policy) || !is_hermitian(a2, policy))
    throw NotHermitianError("hamiltonian_from_parts: parts must be Hermitian");
  return kron(ComplexMatrix::identity(2), a1 * a1 + a2 * a2) +
         kron(pauli::sigma3(), kI * commutator(a1, a2));
}

Rotation2 rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {{{c, s}, {-s, c}}};
}

Rotation2 reflection(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {{{c, s}, {s, -c}}};
}

SuperchargeSystem reparametrize(const SuperchargeSystem& system, const Rotation2& o,
                                const NumericPolicy& policy) {
  if (system.complex_charges || system.charges.size() != 2)
    throw std::invalid_argument("reparametrize: needs exactly two real supercharges");
  require_orthogonal(o, policy);
  return validate_def1(system.hamiltonian,
                       {apply_rotation(o, system.charges, 0), apply_rotation(o, system.charges, 1)},
                       policy);
}

GradedSystem reparametrize(const GradedSystem& system, const Rotation2& o,
                           const NumericPolicy& policy) {
  if (system.complex_charges || system.charges.size() != 2)
    throw std::invalid_argument("reparametrize: needs exactly two real supercharges");
  require_orthogonal(o, policy);
  return validate_def3(system.hamiltonian, system.involution.matrix(),
                       {apply_rotation(o, system.charges, 0), apply_rotation(o, system.charges, 1)},
                       policy);
}

GradedSystem rephase(const GradedSystem& system, double theta, const NumericPolicy& policy) {
  if (!system.complex_charges) throw std::invalid_argument("rephase: needs complex supercharges");
  const Complex phase = std::polar(1.0, theta);
  std::vector<ComplexMatrix> charges;
  for (const auto& q : system.charges) charges.push_back(phase * q);
  return validate_def4(system.hamiltonian, system.involution.matrix(), charges, policy);
}

}  // namespace susyqm
