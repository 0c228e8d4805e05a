#include "sfq/unitary.hpp"

#include <limits>
#include <string>

namespace sfq {

double unitarity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  const ComplexMatrix residual = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
  return residual.cwiseAbs().maxCoeff();
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
  return UnitaryMatrix(ComplexMatrix::Identity(dim, dim));
}

UnitaryMatrix UnitaryMatrix::checked(ComplexMatrix m, double tolerance) {
  if (m.rows() == 0) throw std::invalid_argument("empty unitary");
  const double defect = unitarity_defect(m);
  if (!(defect <= tolerance)) {
    throw std::domain_error("matrix is not unitary: defect " + std::to_string(defect));
  }
  return UnitaryMatrix(std::move(m));
}

}  // namespace sfq
