#include "susyqm/models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "susyqm/errors.hpp"

namespace susyqm {

namespace {

/// Periodic central difference on n sites, without the −i/(2dx) prefactor.
ComplexMatrix periodic_difference(std::size_t n) {
  ComplexMatrix d(n);
  for (std::size_t j = 0; j < n; ++j) {
    d(j, (j + 1) % n) += 1.0;
    d(j, (j + n - 1) % n) -= 1.0;
  }
  return d;
}

ComplexMatrix momentum_1d(std::size_t n, double dx) {
  return Complex(0.0, -1.0 / (2.0 * dx)) * periodic_difference(n);
}

}  // namespace

void LatticeSpec::validate() const {
  if (sites == 0 || sites % 2 == 0)
    throw std::invalid_argument("lattice needs an odd, positive number of sites");
  if (!(spacing > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
}

void PlanarLattice::validate() const {
  if (sites_x == 0 || sites_x % 2 == 0 || sites_y == 0 || sites_y % 2 == 0)
    throw std::invalid_argument("planar lattice needs odd, positive site counts on both axes");
  if (!(spacing > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
}

std::pair<ComplexMatrix, ComplexMatrix> fermionic_ladder() {
  ComplexMatrix f = ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
  ComplexMatrix fd = adjoint(f);
  return {std::move(f), std::move(fd)};
}

GradedSystem tensor_supercharge(const ComplexMatrix& a, const NumericPolicy& policy) {
  if (!a.is_square()) throw DimensionError("tensor_supercharge: A must be square");
  const auto [f, fd] = fermionic_ladder();
  const ComplexMatrix k = kron(pauli::sigma3(), ComplexMatrix::identity(a.rows()));
  const ComplexMatrix q = kron(fd, a) + kron(f, adjoint(a));
  return validate_def3(q * q, k, {q}, policy);
}

GradedSystem block_supercharge(const ComplexMatrix& a, const NumericPolicy& policy) {
  const std::size_t nb = a.cols();
  const std::size_t nf = a.rows();
  const std::size_t n = nb + nf;
  const ComplexMatrix a_dag = adjoint(a);

  ComplexMatrix k(n);
  for (std::size_t i = 0; i < n; ++i) k(i, i) = i < nb ? 1.0 : -1.0;
  ComplexMatrix q(n);
  set_block(q, 0, nb, a_dag);
  set_block(q, nb, 0, a);
  const ComplexMatrix h = direct_sum(a_dag * a, a * a_dag);
  return validate_def3(h, k, {q}, policy);
}

ComplexMatrix parity_matrix(std::size_t sites) {
  ComplexMatrix k(sites);
  for (std::size_t j = 0; j < sites; ++j) k(j, sites - 1 - j) = 1.0;
  return k;
}

ComplexMatrix central_momentum(const LatticeSpec& spec) {
  spec.validate();
  if (spec.boundary != Boundary::Periodic)
    throw std::invalid_argument("central_momentum: periodic boundary required");
  return momentum_1d(spec.sites, spec.spacing);
}

GradedSystem free_particle_lattice(const LatticeSpec& spec, const NumericPolicy& policy) {
  const ComplexMatrix p = central_momentum(spec);
  const ComplexMatrix q = Complex(1.0 / std::numbers::sqrt2) * p;
  return validate_def3(0.5 * (p * p), parity_matrix(spec.sites), {q}, policy);
}

ComplexMatrix witten_a_operator(const LatticeSpec& spec, const SuperpotentialSamples& w) {
  spec.validate();
  if (w.values.size() != spec.sites) {
    std::ostringstream os;
    os << "superpotential has " << w.values.size() << " samples for " << spec.sites
       << " lattice sites";
    throw DimensionError(os.str());
  }
  const std::size_t n = spec.sites;
  const double inv = 1.0 / spec.spacing;
  const bool left_link = w.values.front() > 0.0;
  const bool right_link = w.values.back() <= 0.0;
  const std::size_t rows = n - 1 + (left_link ? 1 : 0) + (right_link ? 1 : 0);

  ComplexMatrix a(rows, n);
  std::size_t r = 0;
  if (left_link) a(r++, 0) = inv;  // ghost site ψ_{-1} = 0
  for (std::size_t j = 0; j + 1 < n; ++j, ++r) {
    a(r, j) = -inv + w.values[j];
    a(r, j + 1) = inv;
  }
  if (right_link) a(r, n - 1) = -inv + w.values[n - 1];  // ghost site ψ_n = 0
  return a;
}

GradedSystem witten_model_lattice(const LatticeSpec& spec, const SuperpotentialSamples& w,
                                  const NumericPolicy& policy) {
  if (spec.boundary != Boundary::Dirichlet)
    throw std::invalid_argument("witten_model_lattice: Dirichlet boundary required");
  return block_supercharge(witten_a_operator(spec, w), policy);
}

VectorPotential symmetric_gauge(const PlanarLattice& lattice, double b0) {
  lattice.validate();
  VectorPotential field;
  field.ax.resize(lattice.sites());
  field.ay.resize(lattice.sites());
  for (std::size_t iy = 0; iy < lattice.sites_y; ++iy)
    for (std::size_t ix = 0; ix < lattice.sites_x; ++ix) {
      const std::size_t s = iy * lattice.sites_x + ix;
      field.ax[s] = -0.5 * b0 * lattice.y(iy);
      field.ay[s] = 0.5 * b0 * lattice.x(ix);
    }
  return field;
}

GradedSystem pauli_lattice(const PlanarLattice& lattice, const VectorPotential& field,
                           const NumericPolicy& policy) {
  lattice.validate();
  const std::size_t ns = lattice.sites();
  if (field.ax.size() != ns || field.ay.size() != ns)
    throw DimensionError("vector potential sample count differs from lattice size");

  const ComplexMatrix parity =
      kron(parity_matrix(lattice.sites_y), parity_matrix(lattice.sites_x));

  // Parity maps site s to ns − 1 − s on a symmetric lattice.
  double worst = 0.0;
  std::size_t worst_site = 0;
  double field_scale = 0.0;
  for (std::size_t s = 0; s < ns; ++s) {
    const std::size_t m = ns - 1 - s;
    const double dev = std::max(std::abs(field.ax[s] + field.ax[m]),
                                std::abs(field.ay[s] + field.ay[m]));
    if (dev > worst) worst = dev, worst_site = s;
    field_scale = std::max({field_scale, std::abs(field.ax[s]), std::abs(field.ay[s])});
  }
  if (worst > policy.algebra_tol * std::max(1.0, field_scale)) {
    std::ostringstream os;
    os << "pauli_lattice: vector potential is not parity-odd; worst sample at (ix="
       << worst_site % lattice.sites_x << ", iy=" << worst_site / lattice.sites_x
       << ") deviates by " << worst;
    throw std::invalid_argument(os.str());
  }

  const ComplexMatrix px =
      kron(ComplexMatrix::identity(lattice.sites_y), momentum_1d(lattice.sites_x, lattice.spacing));
  const ComplexMatrix py =
      kron(momentum_1d(lattice.sites_y, lattice.spacing), ComplexMatrix::identity(lattice.sites_x));
  const ComplexMatrix pi_x = px - ComplexMatrix::diagonal(std::span<const double>(field.ax));
  const ComplexMatrix pi_y = py - ComplexMatrix::diagonal(std::span<const double>(field.ay));

  const ComplexMatrix q = Complex(1.0 / std::numbers::sqrt2) *
                          (kron(pi_x, pauli::sigma1()) + kron(pi_y, pauli::sigma2()));
  const ComplexMatrix k = kron(parity, ComplexMatrix::identity(2));
  return validate_def3(q * q, k, {q}, policy);
}

double uniform(Lcg& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Lcg& rng) {
  ComplexMatrix m(rows, cols);
  for (auto& z : m.entries()) {
    const double re = uniform(rng, -1.0, 1.0);
    const double im = uniform(rng, -1.0, 1.0);
    z = {re, im};
  }
  return m;
}

ComplexMatrix random_hermitian(std::size_t dim, Lcg& rng) {
  const ComplexMatrix x = random_matrix(dim, dim, rng);
  return 0.5 * (x + adjoint(x));
}

ComplexMatrix random_unitary(std::size_t dim, Lcg& rng) {
  ComplexMatrix u = random_matrix(dim, dim, rng);
  std::vector<ComplexVector> cols;
  for (std::size_t c = 0; c < dim; ++c) {
    ComplexVector v = u.column(c);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& prev : cols) {
        const Complex proj = inner(prev, v);
        for (std::size_t r = 0; r < dim; ++r) v[r] -= proj * prev[r];
      }
    const double nv = vector_norm(v);
    for (auto& z : v) z /= nv;
    cols.push_back(std::move(v));
  }
  for (std::size_t c = 0; c < dim; ++c) u.set_column(c, cols[c]);
  return u;
}

GradedSystem random_graded_system(std::size_t dim_b, std::size_t dim_f, std::uint64_t seed,
                                  const NumericPolicy& policy,
                                  const RandomSystemOptions& options) {
  if (dim_b == 0 || dim_f == 0) throw std::invalid_argument("sector dimensions must be positive");
  Lcg rng(seed);
  ComplexMatrix a;
  if (options.rank) {
    const std::size_t r = *options.rank;
    if (r == 0 || r > std::min(dim_b, dim_f))
      throw std::invalid_argument("rank must lie in [1, min(dim_b, dim_f)]");
    a = random_matrix(dim_f, r, rng) * random_matrix(r, dim_b, rng);
  } else {
    a = random_matrix(dim_f, dim_b, rng);
  }

  const std::size_t n = dim_b + dim_f;
  const ComplexMatrix a_dag = adjoint(a);
  ComplexMatrix k(n);
  for (std::size_t i = 0; i < n; ++i) k(i, i) = i < dim_b ? 1.0 : -1.0;
  ComplexMatrix q(n);
  set_block(q, 0, dim_b, Complex(std::numbers::sqrt2) * a_dag);
  ComplexMatrix h = direct_sum(a_dag * a, a * a_dag);

  if (options.conjugate) {
    const ComplexMatrix u = random_unitary(n, rng);
    const ComplexMatrix ud = adjoint(u);
    k = u * k * ud;
    q = u * q * ud;
    h = u * h * ud;
  }
  return validate_def4(h, k, {q}, policy);
}

GradedSystem to_real_charges(const GradedSystem& system, const NumericPolicy& policy) {
  if (!system.complex_charges || system.charges.size() != 1)
    throw std::invalid_argument("to_real_charges: needs a single complex supercharge");
  auto [q1, q2] = real_from_complex(system.charges.front());
  return validate_def3(system.hamiltonian, system.involution.matrix(), {q1, q2}, policy);
}

GradedSystem to_complex_charge(const GradedSystem& system, const NumericPolicy& policy) {
  if (system.complex_charges || system.charges.size() != 2)
    throw std::invalid_argument("to_complex_charge: needs exactly two real supercharges");
  return validate_def4(system.hamiltonian, system.involution.matrix(),
                       {complex_from_real(system.charges[0], system.charges[1])}, policy);
}

}  // namespace susyqm
