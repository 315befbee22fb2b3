#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace kraus {

using Cx = std::complex<double>;

/// Default relative tolerance for validation flags and rank decisions.
inline constexpr double kDefaultTol = 1e-9;

/// Dense complex matrix, column-major: entry (i, j) lives at
/// data()[i + j * rows()]. Column-major is deliberate — vec() below is
/// column-stacking, so the storage buffer of a matrix *is* its vectorization.
/// Matrices are plain values; every operation returns a fresh matrix.
class ComplexMatrix {
public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Cx{0.0, 0.0}) {}

  static ComplexMatrix identity(std::size_t d);
  /// E_ij: single 1 at (i, j).
  static ComplexMatrix matrix_unit(std::size_t d, std::size_t i, std::size_t j);
  /// Row-by-row construction, mostly for tests and small fixtures.
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Cx>> rows);
  /// d x 1 column vector.
  static ComplexMatrix column_vector(const std::vector<Cx>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_empty() const { return data_.empty(); }

  Cx& operator()(std::size_t i, std::size_t j) { return data_[i + j * rows_]; }
  const Cx& operator()(std::size_t i, std::size_t j) const { return data_[i + j * rows_]; }

  const std::vector<Cx>& data() const { return data_; }
  std::vector<Cx>& data() { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Cx scalar);
  ComplexMatrix& operator*=(double scalar);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Cx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(const ComplexMatrix& m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Cx scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Cx scalar);
ComplexMatrix operator*(double scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, double scalar);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexMatrix transpose(const ComplexMatrix& m);
ComplexMatrix conjugate(const ComplexMatrix& m);

Cx trace(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);
/// Euclidean norm of a column vector (or Frobenius of anything).
double vector_norm(const ComplexMatrix& v);

/// AB - BA. Both square, same dimension.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Frobenius norm of [M, M*]; zero exactly when M is normal.
double normality_defect(const ComplexMatrix& m);

/// Kronecker product, (A kron B)(ia*rB+ib, ja*cB+jb) = A(ia,ja) B(ib,jb).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Column-stacking vectorization: d x d -> d^2 x 1. With column-major
/// storage this is a straight copy; vec(A X B) = (B^T kron A) vec(X).
ComplexMatrix vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows, std::size_t cols);

/// Contiguous sub-block: `rcount` rows starting at r0, `ccount` columns at c0.
ComplexMatrix block(const ComplexMatrix& m, std::size_t r0, std::size_t c0,
                    std::size_t rcount, std::size_t ccount);
void set_block(ComplexMatrix& m, std::size_t r0, std::size_t c0,
               const ComplexMatrix& sub);

/// New matrix made of the selected columns, in the order given.
ComplexMatrix select_columns(const ComplexMatrix& m, const std::vector<std::size_t>& idx);

/// (M + M*)/2 for square M.
ComplexMatrix hermitian_part(const ComplexMatrix& m);
/// (M - M*)/(2i) for square M; Hermitian as well.
ComplexMatrix antihermitian_part(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

/// Frobenius inner product tr(A* B).
Cx frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace kraus
