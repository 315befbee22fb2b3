#include "krauskit/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "krauskit/errors.hpp"

namespace kraus {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()) + " differ");
  }
}

void require_square(const ComplexMatrix& m, const char* op) {
  if (!m.is_square()) {
    throw DimensionMismatch(std::string(op) + ": matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected square");
  }
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t d) {
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = Cx{1.0, 0.0};
  return m;
}

ComplexMatrix ComplexMatrix::matrix_unit(std::size_t d, std::size_t i, std::size_t j) {
  if (i >= d || j >= d) throw IndexOutOfRange("matrix_unit: index out of range");
  ComplexMatrix m(d, d);
  m(i, j) = Cx{1.0, 0.0};
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Cx>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  ComplexMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionMismatch("from_rows: ragged row");
    std::size_t j = 0;
    for (const Cx& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::column_vector(const std::vector<Cx>& entries) {
  ComplexMatrix m(entries.size(), 1);
  std::copy(entries.begin(), entries.end(), m.data().begin());
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator+=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator-=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Cx scalar) {
  for (Cx& v : data_) v *= scalar;
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(double scalar) {
  for (Cx& v : data_) v *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator-(const ComplexMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.data().size(); ++k) out.data()[k] = -m.data()[k];
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw DimensionMismatch("operator*: inner dimensions " + std::to_string(lhs.cols()) + " and " +
                            std::to_string(rhs.rows()) + " differ");
  }
  ComplexMatrix out(lhs.rows(), rhs.cols());
  const std::size_t n = lhs.rows(), k_max = lhs.cols(), m_max = rhs.cols();
  // Column-major friendly order: out(:,j) += rhs(k,j) * lhs(:,k).
  for (std::size_t j = 0; j < m_max; ++j) {
    for (std::size_t k = 0; k < k_max; ++k) {
      const Cx w = rhs(k, j);
      if (w == Cx{0.0, 0.0}) continue;
      for (std::size_t i = 0; i < n; ++i) out(i, j) += lhs(i, k) * w;
    }
  }
  return out;
}

ComplexMatrix operator*(Cx scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(ComplexMatrix m, Cx scalar) { return m *= scalar; }
ComplexMatrix operator*(double scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(ComplexMatrix m, double scalar) { return m *= scalar; }

ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(j, i) = std::conj(m(i, j));
  return out;
}

ComplexMatrix transpose(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(j, i) = m(i, j);
  return out;
}

ComplexMatrix conjugate(const ComplexMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.data().size(); ++k) out.data()[k] = std::conj(m.data()[k]);
  return out;
}

Cx trace(const ComplexMatrix& m) {
  require_square(m, "trace");
  Cx t{0.0, 0.0};
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const Cx& v : m.data()) s += std::norm(v);
  return std::sqrt(s);
}

double max_abs(const ComplexMatrix& m) {
  double s = 0.0;
  for (const Cx& v : m.data()) s = std::max(s, std::abs(v));
  return s;
}

double vector_norm(const ComplexMatrix& v) { return frobenius_norm(v); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "commutator");
  require_same_shape(a, b, "commutator");
  return a * b - b * a;
}

double normality_defect(const ComplexMatrix& m) {
  require_square(m, "normality_defect");
  const ComplexMatrix ms = adjoint(m);
  return frobenius_norm(m * ms - ms * m);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ja = 0; ja < a.cols(); ++ja)
    for (std::size_t ia = 0; ia < a.rows(); ++ia) {
      const Cx w = a(ia, ja);
      if (w == Cx{0.0, 0.0}) continue;
      for (std::size_t jb = 0; jb < b.cols(); ++jb)
        for (std::size_t ib = 0; ib < b.rows(); ++ib)
          out(ia * b.rows() + ib, ja * b.cols() + jb) = w * b(ib, jb);
    }
  return out;
}

ComplexMatrix vec(const ComplexMatrix& m) {
  ComplexMatrix out(m.rows() * m.cols(), 1);
  out.data() = m.data();
  return out;
}

ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows, std::size_t cols) {
  if (v.cols() != 1 || v.rows() != rows * cols) {
    throw DimensionMismatch("unvec: need a " + std::to_string(rows * cols) + "x1 vector");
  }
  ComplexMatrix out(rows, cols);
  out.data() = v.data();
  return out;
}

ComplexMatrix block(const ComplexMatrix& m, std::size_t r0, std::size_t c0,
                    std::size_t rcount, std::size_t ccount) {
  if (r0 + rcount > m.rows() || c0 + ccount > m.cols()) {
    throw IndexOutOfRange("block: selection exceeds matrix bounds");
  }
  ComplexMatrix out(rcount, ccount);
  for (std::size_t j = 0; j < ccount; ++j)
    for (std::size_t i = 0; i < rcount; ++i) out(i, j) = m(r0 + i, c0 + j);
  return out;
}

void set_block(ComplexMatrix& m, std::size_t r0, std::size_t c0, const ComplexMatrix& sub) {
  if (r0 + sub.rows() > m.rows() || c0 + sub.cols() > m.cols()) {
    throw IndexOutOfRange("set_block: selection exceeds matrix bounds");
  }
  for (std::size_t j = 0; j < sub.cols(); ++j)
    for (std::size_t i = 0; i < sub.rows(); ++i) m(r0 + i, c0 + j) = sub(i, j);
}

ComplexMatrix select_columns(const ComplexMatrix& m, const std::vector<std::size_t>& idx) {
  ComplexMatrix out(m.rows(), idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (idx[j] >= m.cols()) throw IndexOutOfRange("select_columns: column index out of range");
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, idx[j]);
  }
  return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  require_square(m, "hermitian_part");
  return 0.5 * (m + adjoint(m));
}

ComplexMatrix antihermitian_part(const ComplexMatrix& m) {
  require_square(m, "antihermitian_part");
  return Cx{0.0, -0.5} * (m - adjoint(m));
}

bool all_finite(const ComplexMatrix& m) {
  for (const Cx& v : m.data()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

Cx frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "frobenius_inner");
  Cx s{0.0, 0.0};
  for (std::size_t k = 0; k < a.data().size(); ++k) s += std::conj(a.data()[k]) * b.data()[k];
  return s;
}

}  // namespace kraus
