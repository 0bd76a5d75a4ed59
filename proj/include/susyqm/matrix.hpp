#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "susyqm/policy.hpp"

namespace susyqm {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr Complex kI{0.0, 1.0};

/// Dense complex matrix, row-major. Operators are square; rectangular shapes
/// appear only for sector-to-sector maps and kernel bases.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  explicit ComplexMatrix(std::size_t dim) : ComplexMatrix(dim, dim) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zeros(std::size_t dim) { return ComplexMatrix(dim, dim); }
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  /// Row-wise literal, e.g. `from_rows({{0, 1}, {0, 0}})`.
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  /// Side length; throws DimensionError for rectangular matrices.
  std::size_t dim() const;
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }
  std::span<const Complex> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  std::span<Complex> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }

  ComplexVector column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Complex> values);

  bool all_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scalar);
ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v);

/// AB - BA.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
/// AB + BA.
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);

/// ‖A − A†‖_F ≤ hermiticity_tol · max(1, ‖A‖_F).
bool is_hermitian(const ComplexMatrix& a, const NumericPolicy& policy);

/// Frobenius norm. Every validator reduces a matrix equation to this scalar.
double residual_norm(const ComplexMatrix& a);
inline double frobenius_norm(const ComplexMatrix& a) { return residual_norm(a); }

double max_abs(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);

/// Kronecker product a ⊗ b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Copy of the nr × nc block starting at (r0, c0).
ComplexMatrix block(const ComplexMatrix& m, std::size_t r0, std::size_t c0, std::size_t nr,
                    std::size_t nc);
void set_block(ComplexMatrix& m, std::size_t r0, std::size_t c0, const ComplexMatrix& b);

/// Block-diagonal assembly diag(a, b).
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

double vector_norm(std::span<const Complex> v);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);

namespace pauli {
ComplexMatrix sigma1();
ComplexMatrix sigma2();
ComplexMatrix sigma3();
}  // namespace pauli

}  // namespace susyqm
