#include "susyqm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "susyqm/errors.hpp"
#include "susyqm/spectral.hpp"

namespace susyqm {

namespace {

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Distance from `value` to the nearest entry of `others`, relative.
double nearest_gap(double value, const std::vector<double>& others) {
  double best = 1.0;
  for (double o : others) best = std::min(best, relative_gap(value, o));
  return best;
}

}  // namespace

SpectralReport spectral_pairing_report(const GradedSystem& system, const NumericPolicy& policy) {
  const StandardRepresentation rep = standard_representation(system, policy);

  SpectralReport out;
  out.bosonic_eigenvalues = eigvalsh(rep.h_plus, policy);
  out.fermionic_eigenvalues = eigvalsh(rep.h_minus, policy);

  double rho = 0.0;
  for (double v : out.bosonic_eigenvalues) rho = std::max(rho, std::abs(v));
  for (double v : out.fermionic_eigenvalues) rho = std::max(rho, std::abs(v));
  out.zero_threshold = policy.kernel_tol * rho;

  // Indices of positive (non-zero-mode) eigenvalues, ascending.
  std::vector<std::size_t> pos_b;
  std::vector<std::size_t> pos_f;
  for (std::size_t i = 0; i < out.bosonic_eigenvalues.size(); ++i) {
    if (out.bosonic_eigenvalues[i] <= out.zero_threshold)
      ++out.unpaired_bosonic_zero_modes;
    else
      pos_b.push_back(i);
  }
  for (std::size_t i = 0; i < out.fermionic_eigenvalues.size(); ++i) {
    if (out.fermionic_eigenvalues[i] <= out.zero_threshold)
      ++out.unpaired_fermionic_zero_modes;
    else
      pos_f.push_back(i);
  }
  out.witten_index = static_cast<int>(out.unpaired_bosonic_zero_modes) -
                     static_cast<int>(out.unpaired_fermionic_zero_modes);

  // Two-pointer walk over both sorted sectors; degenerate clusters match by count.
  std::vector<double> orphans_b;
  std::vector<double> orphans_f;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < pos_b.size() && j < pos_f.size()) {
    const double b = out.bosonic_eigenvalues[pos_b[i]];
    const double f = out.fermionic_eigenvalues[pos_f[j]];
    const double gap = relative_gap(b, f);
    if (gap <= policy.pairing_tol) {
      if (gap >= 0.1 * policy.pairing_tol) out.borderline_pairs.push_back(out.pairs.size());
      out.pairs.push_back({pos_b[i], pos_f[j], b, f, gap});
      ++i;
      ++j;
    } else if (b < f) {
      orphans_b.push_back(b);
      ++i;
    } else {
      orphans_f.push_back(f);
      ++j;
    }
  }
  for (; i < pos_b.size(); ++i) orphans_b.push_back(out.bosonic_eigenvalues[pos_b[i]]);
  for (; j < pos_f.size(); ++j) orphans_f.push_back(out.fermionic_eigenvalues[pos_f[j]]);

  if (!orphans_b.empty() || !orphans_f.empty()) {
    std::vector<double> partners_b;
    std::vector<double> partners_f;
    for (auto k : pos_b) partners_b.push_back(out.bosonic_eigenvalues[k]);
    for (auto k : pos_f) partners_f.push_back(out.fermionic_eigenvalues[k]);
    double worst_gap = -1.0;
    double worst_value = 0.0;
    const char* worst_sector = "bosonic";
    for (double v : orphans_b) {
      const double g = nearest_gap(v, partners_f);
      if (g > worst_gap) worst_gap = g, worst_value = v, worst_sector = "bosonic";
    }
    for (double v : orphans_f) {
      const double g = nearest_gap(v, partners_b);
      if (g > worst_gap) worst_gap = g, worst_value = v, worst_sector = "fermionic";
    }
    std::ostringstream os;
    os << "spectral pairing failed: " << orphans_b.size() + orphans_f.size()
       << " unmatched positive eigenvalues; worst is " << worst_sector << " eigenvalue "
       << worst_value << " (relative gap " << worst_gap << " to nearest partner)";
    throw PairingError(os.str());
  }
  return out;
}

namespace {

IndexReport index_from_blocks(const ComplexMatrix& a, const ComplexMatrix& h_plus,
                              const ComplexMatrix& h_minus, const NumericPolicy& policy) {
  const KernelBasis ker_a = kernel_basis(a, policy);
  const KernelBasis ker_ad = kernel_basis(adjoint(a), policy);
  const KernelBasis ker_hp = kernel_basis(h_plus, policy);
  const KernelBasis ker_hm = kernel_basis(h_minus, policy);

  IndexReport out;
  out.kernel_a = ker_a.dim_kernel;
  out.kernel_a_dagger = ker_ad.dim_kernel;
  out.kernel_h_plus = ker_hp.dim_kernel;
  out.kernel_h_minus = ker_hm.dim_kernel;
  for (const KernelBasis* k : {&ker_a, &ker_ad, &ker_hp, &ker_hm})
    out.borderline.insert(out.borderline.end(), k->borderline.begin(), k->borderline.end());
  out.index = out.via_a();

  if (out.via_a() != out.via_hamiltonian()) {
    std::ostringstream os;
    os << "witten_index: dim ker A - dim ker A^dag = " << out.via_a()
       << " but dim ker H+ - dim ker H- = " << out.via_hamiltonian()
       << " (kernel threshold instability)";
    throw CrossCheckError(os.str());
  }
  return out;
}

}  // namespace

IndexReport witten_index(const GradedSystem& system, const NumericPolicy& policy) {
  const StandardRepresentation rep = standard_representation(system, policy);
  return index_from_blocks(rep.a_operator, rep.h_plus, rep.h_minus, policy);
}

IndexReport operator_index(const ComplexMatrix& a, const NumericPolicy& policy) {
  const ComplexMatrix a_dag = adjoint(a);
  return index_from_blocks(a, a_dag * a, a * a_dag, policy);
}

std::vector<int> index_range(std::size_t d) {
  std::vector<int> out;
  out.reserve(d + 1);
  for (std::size_t k = 0; k <= d; ++k) out.push_back(2 * static_cast<int>(k) - static_cast<int>(d));
  return out;
}

KernelEqualityReport kernel_equality_check(const ComplexMatrix& q1, const ComplexMatrix& q2,
                                           const NumericPolicy& policy) {
  if (!q1.is_square() || q1.rows() != q2.rows() || q1.cols() != q2.cols())
    throw DimensionError("kernel_equality_check: dimension mismatch");
  const ComplexMatrix s1 = q1 * q1;
  const ComplexMatrix s2 = q2 * q2;
  ValidationReport pre;
  pre.definition = "kernel equality precondition";
  pre.add("Q1^2=Q2^2", s1 - s2, std::max(residual_norm(s1), residual_norm(s2)),
          policy.algebra_tol);
  if (!pre.valid()) throw ValidationError(std::move(pre));

  const KernelBasis k1 = kernel_basis(q1, policy);
  const KernelBasis k2 = kernel_basis(q2, policy);
  KernelEqualityReport out;
  out.kernel_q1 = k1.dim_kernel;
  out.kernel_q2 = k2.dim_kernel;
  if (k1.dim_kernel > 0) out.residual_q2_on_kernel_q1 = residual_norm(q2 * k1.basis);
  if (k2.dim_kernel > 0) out.residual_q1_on_kernel_q2 = residual_norm(q1 * k2.basis);

  std::ostringstream os;
  if (out.kernel_q1 != out.kernel_q2) {
    os << "kernel_equality_check: dim ker Q1 = " << out.kernel_q1 << " but dim ker Q2 = "
       << out.kernel_q2;
    throw CrossCheckError(os.str());
  }
  const double limit1 = policy.kernel_tol * k2.spectral_radius * std::sqrt(double(k1.dim_kernel));
  const double limit2 = policy.kernel_tol * k1.spectral_radius * std::sqrt(double(k2.dim_kernel));
  if (out.residual_q2_on_kernel_q1 > limit1 || out.residual_q1_on_kernel_q2 > limit2) {
    os << "kernel_equality_check: kernels not mutually annihilated (residuals "
       << out.residual_q2_on_kernel_q1 << ", " << out.residual_q1_on_kernel_q2 << ")";
    throw CrossCheckError(os.str());
  }
  return out;
}

}  // namespace susyqm
