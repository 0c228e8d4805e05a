#include "sfq/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sfq {

QubitGate y_rotation(double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  QubitGate g;
  g << c, -s, s, c;
  return g;
}

FidelityReport average_gate_fidelity(const UnitaryMatrix& actual, const QubitGate& target,
                                     double duration) {
  if (actual.dim() < 2) {
    throw std::invalid_argument("average_gate_fidelity: actual must have dim >= 2");
  }
  const QubitGate block = actual.matrix().topLeftCorner<2, 2>();
  const QubitGate m = target.adjoint() * block;
  const double overlap = m.squaredNorm();  // Tr(M^dagger M)
  const double trace = std::norm(m.trace());

  FidelityReport report;
  report.avg_gate_fidelity = std::clamp((overlap + trace) / 6.0, 0.0, 1.0);
  report.leakage = std::clamp(1.0 - overlap / 2.0, 0.0, 1.0);
  report.duration = duration;
  return report;
}

FidelityReport average_gate_fidelity(const UnitaryMatrix& actual, const ComplexMatrix& target,
                                     double duration) {
  if (target.rows() != 2 || target.cols() != 2) {
    throw std::invalid_argument("average_gate_fidelity: target must be 2x2");
  }
  if (unitarity_defect(target) > UnitaryMatrix::kDefaultTolerance) {
    throw std::invalid_argument("average_gate_fidelity: target is not unitary");
  }
  return average_gate_fidelity(actual, QubitGate(target), duration);
}

UnitaryMatrix to_rotating_frame(const TransmonSpec& spec, const UnitaryMatrix& lab,
                                double duration) {
  if (lab.dim() != spec.levels) {
    throw std::invalid_argument("to_rotating_frame: dimension mismatch");
  }
  ComplexMatrix u = lab.matrix();
  for (Eigen::Index k = 0; k < u.rows(); ++k) {
    u.row(k) *= std::polar(1.0, static_cast<double>(k) * spec.omega01 * duration);
  }
  return UnitaryMatrix::unchecked(std::move(u));
}

FidelityReport gate_report(const TransmonSpec& spec, const UnitaryMatrix& lab, double duration,
                           const QubitGate& target) {
  return average_gate_fidelity(to_rotating_frame(spec, lab, duration), target, duration);
}

}  // namespace sfq
