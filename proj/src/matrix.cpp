#include "susyqm/matrix.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "susyqm/errors.hpp"

namespace susyqm {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << op << ": incompatible operators " << a.rows() << "x" << a.cols() << " and " << b.rows()
       << "x" << b.cols();
    throw DimensionError(os.str());
  }
}

}  // namespace

void NumericPolicy::validate() const {
  for (double tol : {hermiticity_tol, algebra_tol, kernel_tol, eigensolver_tol, pairing_tol}) {
    if (!(tol > 0.0 && tol <= 1e-3)) {
      throw std::invalid_argument("numeric policy tolerances must lie in (0, 1e-3]");
    }
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    std::ostringstream os;
    os << "matrix of shape " << rows << "x" << cols << " needs " << rows * cols
       << " entries, got " << entries_.size();
    throw DimensionError(os.str());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> entries;
  entries.reserve(nr * nc);
  for (const auto& r : rows) {
    if (r.size() != nc) throw DimensionError("from_rows: ragged rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return ComplexMatrix(nr, nc, std::move(entries));
}

std::size_t ComplexMatrix::dim() const {
  if (!is_square()) throw DimensionError("dim() of a rectangular matrix");
  return rows_;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
  ComplexVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void ComplexMatrix::set_column(std::size_t c, std::span<const Complex> values) {
  if (values.size() != rows_) throw DimensionError("set_column: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

bool ComplexMatrix::all_finite() const noexcept {
  for (const auto& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : entries_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator-(ComplexMatrix m) {
  for (auto& z : m.entries()) z = -z;
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    std::ostringstream os;
    os << "operator*: incompatible operators " << lhs.rows() << "x" << lhs.cols() << " and "
       << rhs.rows() << "x" << rhs.cols();
    throw DimensionError(os.str());
  }
  ComplexMatrix out(lhs.rows(), rhs.cols());
  // i-k-j order streams rows of rhs; lattice operators are sparse, so zero
  // entries of lhs are skipped.
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    auto out_row = out.row(i);
    const auto lhs_row = lhs.row(i);
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Complex a = lhs_row[k];
      if (a == Complex{}) continue;
      const auto rhs_row = rhs.row(k);
      for (std::size_t j = 0; j < rhs.cols(); ++j) out_row[j] += a * rhs_row[j];
    }
  }
  return out;
}

ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(ComplexMatrix m, Complex scalar) { return m *= scalar; }

ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) throw DimensionError("matrix-vector product: length mismatch");
  ComplexVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex acc{};
    const auto r = m.row(i);
    for (std::size_t j = 0; j < v.size(); ++j) acc += r[j] * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "commutator");
  if (!a.is_square()) throw DimensionError("commutator: operators must be square");
  return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "anticommutator");
  if (!a.is_square()) throw DimensionError("anticommutator: operators must be square");
  return a * b + b * a;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
  return out;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = a(r, c);
  return out;
}

bool is_hermitian(const ComplexMatrix& a, const NumericPolicy& policy) {
  if (!a.is_square()) return false;
  double skew = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = r; c < a.cols(); ++c) {
      const double d = std::norm(a(r, c) - std::conj(a(c, r)));
      skew += (r == c) ? d : 2.0 * d;
    }
  return std::sqrt(skew) <= policy.hermiticity_tol * std::max(1.0, residual_norm(a));
}

double residual_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (const auto& z : a.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const auto& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

Complex trace(const ComplexMatrix& a) {
  Complex t{};
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      if (s == Complex{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

ComplexMatrix block(const ComplexMatrix& m, std::size_t r0, std::size_t c0, std::size_t nr,
                    std::size_t nc) {
  if (r0 + nr > m.rows() || c0 + nc > m.cols()) throw DimensionError("block: out of range");
  ComplexMatrix out(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = m(r0 + r, c0 + c);
  return out;
}

void set_block(ComplexMatrix& m, std::size_t r0, std::size_t c0, const ComplexMatrix& b) {
  if (r0 + b.rows() > m.rows() || c0 + b.cols() > m.cols())
    throw DimensionError("set_block: out of range");
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m(r0 + r, c0 + c) = b(r, c);
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  set_block(out, 0, 0, a);
  set_block(out, a.rows(), a.cols(), b);
  return out;
}

double vector_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionError("inner: length mismatch");
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

namespace pauli {

ComplexMatrix sigma1() { return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
ComplexMatrix sigma2() { return ComplexMatrix::from_rows({{0.0, -kI}, {kI, 0.0}}); }
ComplexMatrix sigma3() { return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

}  // namespace pauli

}  // namespace susyqm
