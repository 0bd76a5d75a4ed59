#include <doctest.h>

#include <cmath>

#include "susyqm/errors.hpp"
#include "susyqm/grading.hpp"
#include "susyqm/models.hpp"

using namespace susyqm;

namespace {

const NumericPolicy kPolicy;

/// A random involution with the given sector sizes in a random basis.
ComplexMatrix random_involution(std::size_t nb, std::size_t nf, Lcg& rng) {
  const ComplexMatrix u = random_unitary(nb + nf, rng);
  ComplexMatrix d(nb + nf);
  for (std::size_t i = 0; i < nb + nf; ++i) d(i, i) = i < nb ? 1.0 : -1.0;
  return u * d * adjoint(u);
}

}  // namespace

TEST_CASE("validate_involution examples") {
  const Involution k = validate_involution(pauli::sigma3(), kPolicy);
  CHECK(k.dim_bosonic() == 1);
  CHECK(k.dim_fermionic() == 1);

  try {
    validate_involution(ComplexMatrix::identity(2), kPolicy);
    FAIL("identity accepted");
  } catch (const ValidationError& e) {
    CHECK(e.report().failed("K nontrivial"));
    CHECK_FALSE(e.report().failed("K^2=I"));
  }
  CHECK_THROWS_AS(validate_involution(-ComplexMatrix::identity(3), kPolicy), ValidationError);

  const Involution p5 = validate_involution(parity_matrix(5), kPolicy);
  CHECK(p5.dim_bosonic() == 3);
  CHECK(p5.dim_fermionic() == 2);
}

TEST_CASE("check_involution names the failing relation") {
  const ComplexMatrix f = ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
  CHECK(check_involution(f, kPolicy).failed("K hermitian"));
  CHECK(check_involution(2.0 * pauli::sigma3(), kPolicy).failed("K^2=I"));
  CHECK(check_involution(pauli::sigma1(), kPolicy).valid());
  CHECK_THROWS_AS(check_involution(ComplexMatrix(2, 3), kPolicy), DimensionError);
}

TEST_CASE("projectors") {
  const auto [pp, pm] = projectors(validate_involution(pauli::sigma3(), kPolicy));
  CHECK(pp(0, 0) == Complex(1.0));
  CHECK(pp(1, 1) == Complex(0.0));
  CHECK(pm(1, 1) == Complex(1.0));

  Lcg rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Involution k = validate_involution(random_involution(3, 4, rng), kPolicy);
    const auto [p, m] = projectors(k);
    CHECK(residual_norm(p + m - ComplexMatrix::identity(7)) < 1e-13);
    CHECK(residual_norm(p * m) < 1e-13);
    CHECK(residual_norm(m * p) < 1e-13);
    CHECK(residual_norm(p * p - p) < 1e-13);
    CHECK(std::abs(trace(p) - Complex(3.0)) < 1e-13);
  }
}

TEST_CASE("decompose_vector") {
  const Involution s3 = validate_involution(pauli::sigma3(), kPolicy);
  const ComplexVector phi{1.0, 1.0};
  const auto [b, f] = decompose_vector(s3, phi);
  CHECK(b == ComplexVector{1.0, 0.0});
  CHECK(f == ComplexVector{0.0, 1.0});

  const ComplexVector even{1.0, 0.0};
  const auto [b2, f2] = decompose_vector(s3, even);
  CHECK(b2 == even);
  CHECK(vector_norm(f2) == 0.0);

  // δ at j = 1 on the sites j = −2..2, stored at index 3.
  const Involution p5 = validate_involution(parity_matrix(5), kPolicy);
  ComplexVector delta(5);
  delta[3] = 1.0;
  const auto [be, fo] = decompose_vector(p5, delta);
  CHECK(be == ComplexVector{0.0, 0.5, 0.0, 0.5, 0.0});
  CHECK(fo == ComplexVector{0.0, -0.5, 0.0, 0.5, 0.0});
  CHECK_THROWS_AS(decompose_vector(p5, ComplexVector(4)), DimensionError);
}

TEST_CASE("classify_operator") {
  const Involution s3 = validate_involution(pauli::sigma3(), kPolicy);
  CHECK(classify_operator(s3, pauli::sigma1(), kPolicy) == Parity::Odd);
  CHECK(classify_operator(s3, pauli::sigma3(), kPolicy) == Parity::Even);
  CHECK(classify_operator(s3, pauli::sigma1() + pauli::sigma3(), kPolicy) == Parity::Mixed);
  CHECK(classify_operator(s3, ComplexMatrix::zeros(2), kPolicy) == Parity::Even);
  CHECK(std::string(to_string(Parity::Mixed)) == "mixed");
}

TEST_CASE("grading_basis examples") {
  const GradingBasis g3 = grading_basis(validate_involution(pauli::sigma3(), kPolicy), kPolicy);
  CHECK(residual_norm(g3.unitary - ComplexMatrix::identity(2)) < 1e-15);
  CHECK(g3.dim_bosonic == 1);

  const GradingBasis g1 = grading_basis(validate_involution(pauli::sigma1(), kPolicy), kPolicy);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(g1.unitary(0, 0)) == doctest::Approx(r));
  CHECK(std::abs(g1.unitary(1, 0) - g1.unitary(0, 0)) < 1e-15);
  CHECK(std::abs(g1.unitary(1, 1) + g1.unitary(0, 1)) < 1e-15);

  const GradingBasis g101 = grading_basis(validate_involution(parity_matrix(101), kPolicy), kPolicy);
  CHECK(g101.dim_bosonic == 51);
  CHECK(g101.dim_fermionic == 50);
}

TEST_CASE("grading_basis diagonalises random involutions") {
  Lcg rng(22);
  for (auto [nb, nf] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 5}, {6, 3}}) {
    const ComplexMatrix km = random_involution(nb, nf, rng);
    const GradingBasis g = grading_basis(validate_involution(km, kPolicy), kPolicy);
    const ComplexMatrix u = g.unitary;
    CHECK(residual_norm(adjoint(u) * u - ComplexMatrix::identity(nb + nf)) < 1e-12);
    ComplexMatrix d(nb + nf);
    for (std::size_t i = 0; i < nb + nf; ++i) d(i, i) = i < nb ? 1.0 : -1.0;
    CHECK(residual_norm(adjoint(u) * km * u - d) < 1e-12);
  }
}

TEST_CASE("block_extract") {
  const GradingBasis g = grading_basis(validate_involution(pauli::sigma3(), kPolicy), kPolicy);
  const OperatorBlocks b = block_extract(g, pauli::sigma1());
  CHECK(b.a(0, 0) == Complex(0.0));
  CHECK(b.b(0, 0) == Complex(1.0));
  CHECK(b.c(0, 0) == Complex(1.0));
  CHECK(b.d(0, 0) == Complex(0.0));

  const std::vector<double> h{2.0, 5.0};
  const OperatorBlocks hb = block_extract(g, ComplexMatrix::diagonal(std::span<const double>(h)));
  CHECK(residual_norm(hb.b) == 0.0);
  CHECK(residual_norm(hb.c) == 0.0);

  // Odd operator M = Π₊XΠ₋ + Π₋X†Π₊ under a random K has zero diagonal blocks.
  Lcg rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const Involution k = validate_involution(random_involution(4, 3, rng), kPolicy);
    const auto [pp, pm] = projectors(k);
    const ComplexMatrix x = random_matrix(7, 7, rng);
    const ComplexMatrix m = pp * x * pm + pm * adjoint(x) * pp;
    const OperatorBlocks ob = block_extract(grading_basis(k, kPolicy), m);
    CHECK(residual_norm(ob.a) <= kPolicy.algebra_tol * residual_norm(m));
    CHECK(residual_norm(ob.d) <= kPolicy.algebra_tol * residual_norm(m));
    CHECK(ob.c.rows() == 3);
    CHECK(ob.c.cols() == 4);
  }
}
