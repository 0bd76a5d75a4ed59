#include "susyqm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "susyqm/errors.hpp"

namespace susyqm {

namespace {

/// Rotation that zeroes the (p, q) entry of the Hermitian 2×2 block
/// [[app, apq], [conj(apq), aqq]]. Acting on columns: x' = c x − s ē y,
/// y' = s x + c ē y, where e = apq / |apq|.
struct JacobiRotation {
  double c;
  double s;
  Complex phase;  // e
  double t;       // tan θ; diagonal shifts by ∓t|apq|
};

JacobiRotation make_rotation(double app, double aqq, Complex apq) {
  const double g = std::abs(apq);
  const double tau = (aqq - app) / (2.0 * g);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c, apq / g, t};
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) sum += std::norm(a(r, c));
  return std::sqrt(sum);
}

void rotate_rows(ComplexMatrix& m, std::size_t p, std::size_t q, const JacobiRotation& rot) {
  auto row_p = m.row(p);
  auto row_q = m.row(q);
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const Complex x = row_p[k];
    const Complex y = row_q[k];
    row_p[k] = rot.c * x - rot.s * rot.phase * y;
    row_q[k] = rot.s * x + rot.c * rot.phase * y;
  }
}

std::vector<double> run_jacobi(const ComplexMatrix& input, const NumericPolicy& policy,
                               int max_sweeps, ComplexMatrix* vectors) {
  if (!input.is_square()) throw DimensionError("eigh: matrix must be square");
  if (!is_hermitian(input, policy)) throw NotHermitianError("eigh: matrix is not Hermitian");

  const std::size_t n = input.rows();
  // Work on the exactly Hermitian part so rotations never see a skew residue.
  ComplexMatrix a(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = 0.5 * (input(r, c) + std::conj(input(c, r)));
  // Eigenvectors are accumulated as the rows of V†.
  if (vectors) *vectors = ComplexMatrix::identity(n);

  const double target = policy.eigensolver_tol * residual_norm(a);
  const double negligible = n > 0 ? 1e-3 * target / static_cast<double>(n) : 0.0;

  double off = off_diagonal_norm(a);
  int sweep = 0;
  // One sweep past the target: convergence is quadratic, so this takes the
  // eigenvectors from target accuracy down to rounding level.
  bool polished = off == 0.0;
  while (off > target || !polished) {
    if (off <= target) polished = true;
    if (sweep == max_sweeps) {
      std::ostringstream os;
      os << "eigh: no convergence after " << max_sweeps << " sweeps, off-diagonal norm " << off;
      throw ConvergenceError(os.str(), off);
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= negligible || g == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const JacobiRotation rot = make_rotation(app, aqq, apq);
        // Rows are contiguous; the column half of the similarity follows from
        // Hermiticity of the result.
        rotate_rows(a, p, q, rot);
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          a(k, p) = std::conj(a(p, k));
          a(k, q) = std::conj(a(q, k));
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - rot.t * g;
        a(q, q) = aqq + rot.t * g;
        if (vectors) rotate_rows(*vectors, p, q, rot);
      }
    }
    ++sweep;
    off = off_diagonal_norm(a);
  }
  if (vectors) *vectors = adjoint(*vectors);

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
  return values;
}

std::vector<std::size_t> ascending_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  return order;
}

}  // namespace

EigenDecomposition eigh(const ComplexMatrix& a, const NumericPolicy& policy, int max_sweeps) {
  ComplexMatrix v;
  const std::vector<double> raw = run_jacobi(a, policy, max_sweeps, &v);
  const auto order = ascending_order(raw);

  EigenDecomposition out;
  out.eigenvalues.resize(raw.size());
  out.eigenvectors = ComplexMatrix(raw.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.eigenvalues[k] = raw[order[k]];
    for (std::size_t r = 0; r < raw.size(); ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

std::vector<double> eigvalsh(const ComplexMatrix& a, const NumericPolicy& policy,
                             int max_sweeps) {
  std::vector<double> values = run_jacobi(a, policy, max_sweeps, nullptr);
  std::sort(values.begin(), values.end());
  return values;
}

SingularSystem singular_system(const ComplexMatrix& a, const NumericPolicy& policy,
                               int max_sweeps) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<ComplexVector> cols(n);
  std::vector<ComplexVector> right(n, ComplexVector(n));
  for (std::size_t c = 0; c < n; ++c) {
    cols[c] = a.column(c);
    right[c][c] = 1.0;
  }

  auto rotate = [](ComplexVector& x, ComplexVector& y, const JacobiRotation& rot) {
    const Complex ebar = std::conj(rot.phase);
    for (std::size_t k = 0; k < x.size(); ++k) {
      const Complex xk = x[k];
      const Complex yk = y[k];
      x[k] = rot.c * xk - rot.s * ebar * yk;
      y[k] = rot.s * xk + rot.c * ebar * yk;
    }
  };

  constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  const double orth_tol = std::max(policy.eigensolver_tol,
                                   8.0 * static_cast<double>(m) * std::numeric_limits<double>::epsilon());
  bool rotated = true;
  int sweep = 0;
  double worst = 0.0;
  while (rotated) {
    if (sweep == max_sweeps) {
      std::ostringstream os;
      os << "singular_system: no convergence after " << max_sweeps
         << " sweeps, worst column cosine " << worst;
      throw ConvergenceError(os.str(), worst);
    }
    rotated = false;
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = std::real(inner(cols[p], cols[p]));
        const double beta = std::real(inner(cols[q], cols[q]));
        if (alpha < tiny || beta < tiny) continue;
        const Complex gamma = inner(cols[p], cols[q]);
        // Separate square roots: alpha·beta underflows for columns near zero.
        const double cosine = std::abs(gamma) / (std::sqrt(alpha) * std::sqrt(beta));
        if (!(cosine > orth_tol)) continue;
        worst = std::max(worst, cosine);
        const JacobiRotation rot = make_rotation(alpha, beta, gamma);
        rotate(cols[p], cols[q], rot);
        rotate(right[p], right[q], rot);
        rotated = true;
      }
    }
    ++sweep;
  }

  std::vector<double> sigma(n);
  for (std::size_t c = 0; c < n; ++c) sigma[c] = vector_norm(cols[c]);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  SingularSystem out;
  out.singular_values.resize(n);
  out.right_vectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.singular_values[k] = sigma[order[k]];
    out.right_vectors.set_column(k, right[order[k]]);
  }
  return out;
}

KernelBasis kernel_basis(const ComplexMatrix& a, const NumericPolicy& policy) {
  const SingularSystem sys = singular_system(a, policy);
  const std::size_t n = a.cols();

  KernelBasis out;
  out.spectral_radius = sys.singular_values.empty() ? 0.0 : sys.singular_values.front();
  const double cutoff = policy.kernel_tol * out.spectral_radius;

  std::vector<std::size_t> kernel_cols;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = sys.singular_values[k];
    if (s <= cutoff) kernel_cols.push_back(k);
    if (s > 0.0 && s >= 1e-2 * cutoff && s <= 1e2 * cutoff) out.borderline.push_back(s);
  }
  out.dim_kernel = kernel_cols.size();
  out.basis = ComplexMatrix(n, out.dim_kernel);
  for (std::size_t j = 0; j < kernel_cols.size(); ++j)
    out.basis.set_column(j, sys.right_vectors.column(kernel_cols[j]));
  return out;
}

ComplexMatrix inverse_on_complement(const ComplexMatrix& q, const NumericPolicy& policy) {
  const EigenDecomposition ed = eigh(q, policy);
  const std::size_t n = ed.eigenvalues.size();
  double rho = 0.0;
  for (double v : ed.eigenvalues) rho = std::max(rho, std::abs(v));
  const double cutoff = policy.kernel_tol * rho;

  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = ed.eigenvalues[k];
    if (std::abs(lambda) <= cutoff) continue;
    const double inv = 1.0 / lambda;
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = ed.eigenvectors(r, k) * inv;
      if (vr == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(ed.eigenvectors(c, k));
    }
  }
  return out;
}

double spectral_radius(const ComplexMatrix& hermitian, const NumericPolicy& policy) {
  double rho = 0.0;
  for (double v : eigvalsh(hermitian, policy)) rho = std::max(rho, std::abs(v));
  return rho;
}

}  // namespace susyqm
