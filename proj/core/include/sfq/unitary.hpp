#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace sfq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Largest |(U^dagger U - I)_ij|.
double unitarity_defect(const ComplexMatrix& m);

/// Dense propagator over a truncated level space.
///
/// Construction through `checked` verifies U^dagger U = I to `tolerance` in
/// max-norm and throws std::domain_error otherwise. Products of unitaries are
/// not re-checked.
class UnitaryMatrix {
 public:
  static constexpr double kDefaultTolerance = 1e-10;

  UnitaryMatrix() = default;

  static UnitaryMatrix identity(Eigen::Index dim);
  static UnitaryMatrix checked(ComplexMatrix m,
                               double tolerance = kDefaultTolerance);
  static UnitaryMatrix unchecked(ComplexMatrix m) { return UnitaryMatrix(std::move(m)); }

  Eigen::Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  UnitaryMatrix adjoint() const { return UnitaryMatrix(m_.adjoint()); }
  double defect() const { return unitarity_defect(m_); }

  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("unitary dimension mismatch");
    return UnitaryMatrix(a.m_ * b.m_);
  }

 private:
  explicit UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

}  // namespace sfq
