#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "susyqm/matrix.hpp"
#include "susyqm/policy.hpp"
#include "susyqm/susy.hpp"

namespace susyqm {

enum class Boundary { Periodic, Dirichlet };

/// Symmetric one-dimensional lattice, sites j = −m..m stored at indices 0..2m.
struct LatticeSpec {
  std::size_t sites = 0;
  double spacing = 1.0;
  Boundary boundary = Boundary::Periodic;

  /// Throws std::invalid_argument for an even or zero site count or spacing ≤ 0.
  void validate() const;
  std::size_t half() const { return sites / 2; }
  double position(std::size_t index) const {
    return (static_cast<double>(index) - static_cast<double>(half())) * spacing;
  }
};

/// W(x_j) at every lattice site.
struct SuperpotentialSamples {
  std::vector<double> values;
};

/// Samples a function of position on the lattice.
template <typename F>
SuperpotentialSamples sample_superpotential(const LatticeSpec& spec, F&& w) {
  SuperpotentialSamples out;
  out.values.reserve(spec.sites);
  for (std::size_t j = 0; j < spec.sites; ++j) out.values.push_back(w(spec.position(j)));
  return out;
}

/// f = [[0, 1], [0, 0]] and f†.
std::pair<ComplexMatrix, ComplexMatrix> fermionic_ladder();

/// K = σ3⊗I, Q = f†⊗A + f⊗A†, H = Q² for square A.
GradedSystem tensor_supercharge(const ComplexMatrix& a, const NumericPolicy& policy);

/// Block assembly for any A: H_f × H_b: K = diag(I, −I), Q = [[0, A†], [A, 0]],
/// H = diag(A†A, AA†). Agrees entrywise with tensor_supercharge for square A.
GradedSystem block_supercharge(const ComplexMatrix& a, const NumericPolicy& policy);

/// (Kφ)_j = φ_{−j}.
ComplexMatrix parity_matrix(std::size_t sites);

/// p = −i(S₊ − S₋)/(2 dx) with periodic shifts.
ComplexMatrix central_momentum(const LatticeSpec& spec);

/// Q = p/√2, H = p²/2, K = parity. Requires a periodic lattice.
GradedSystem free_particle_lattice(const LatticeSpec& spec, const NumericPolicy& policy);

/// A = D + W mapping site amplitudes to link amplitudes. Rows are the links
/// (j, j+1) with (Aψ)_link = (ψ_{j+1} − ψ_j)/dx + W_j ψ_j. Interior links are
/// always present. A ghost link to a Dirichlet site beyond an edge is kept where
/// the bosonic zero-mode candidate e^{−∫W} would grow toward that edge (left
/// edge: W > 0; right edge: W ≤ 0) and dropped otherwise, which puts the
/// Dirichlet condition on the fermionic sector there. W = 0 yields the square
/// forward-difference matrix.
ComplexMatrix witten_a_operator(const LatticeSpec& spec, const SuperpotentialSamples& w);

/// block_supercharge(witten_a_operator(spec, w)). Requires a Dirichlet lattice.
GradedSystem witten_model_lattice(const LatticeSpec& spec, const SuperpotentialSamples& w,
                                  const NumericPolicy& policy);

/// Periodic planar lattice with both axes symmetric about the origin.
struct PlanarLattice {
  std::size_t sites_x = 0;
  std::size_t sites_y = 0;
  double spacing = 1.0;

  void validate() const;
  std::size_t sites() const { return sites_x * sites_y; }
  /// Site index of (ix, iy) is iy·sites_x + ix.
  double x(std::size_t ix) const {
    return (static_cast<double>(ix) - static_cast<double>(sites_x / 2)) * spacing;
  }
  double y(std::size_t iy) const {
    return (static_cast<double>(iy) - static_cast<double>(sites_y / 2)) * spacing;
  }
};

/// Samples of (A_x, A_y) per site.
struct VectorPotential {
  std::vector<double> ax;
  std::vector<double> ay;
};

/// A = (−B₀y/2, B₀x/2).
VectorPotential symmetric_gauge(const PlanarLattice& lattice, double b0);

/// √2·Q = (p_x − A_x)⊗σ1 + (p_y − A_y)⊗σ2 on space ⊗ spin, K = parity ⊗ I2,
/// H = Q². The −B σ3 term comes out of the square. Throws std::invalid_argument
/// naming the worst sample when A is not parity-odd.
GradedSystem pauli_lattice(const PlanarLattice& lattice, const VectorPotential& field,
                           const NumericPolicy& policy);

// Random systems. The stream is the 64-bit LCG x ← 6364136223846793005·x +
// 1442695040888963407 (mod 2⁶⁴); a double in [0, 1) is the top 53 bits of the
// state, so sequences are identical across platforms.
using Lcg = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL,
                                            1442695040888963407ULL, 0ULL>;

double uniform(Lcg& rng, double lo, double hi);
/// Entries with real and imaginary parts uniform in [−1, 1].
ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Lcg& rng);
ComplexMatrix random_hermitian(std::size_t dim, Lcg& rng);
/// Gram–Schmidt orthonormalisation of a random matrix.
ComplexMatrix random_unitary(std::size_t dim, Lcg& rng);

struct RandomSystemOptions {
  /// Conjugate every operator by a random unitary.
  bool conjugate = false;
  /// Rank of A; defaults to full rank min(dim_b, dim_f).
  std::optional<std::size_t> rank;
};

/// Witten-model triple K = diag(I, −I), q = √2·[[0, A†], [0, 0]],
/// H = diag(A†A, AA†) for a seeded random A of shape dim_f × dim_b, validated
/// against def4.
GradedSystem random_graded_system(std::size_t dim_b, std::size_t dim_f, std::uint64_t seed,
                                  const NumericPolicy& policy,
                                  const RandomSystemOptions& options = {});

/// The two real charges (n=2) of a complex-charge system, validated against def3.
GradedSystem to_real_charges(const GradedSystem& system, const NumericPolicy& policy);

/// q = (Q1 + iQ2)/√2 of a two-real-charge system, validated against def4.
GradedSystem to_complex_charge(const GradedSystem& system, const NumericPolicy& policy);

}  // namespace susyqm
