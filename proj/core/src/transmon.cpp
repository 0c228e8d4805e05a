#include "sfq/transmon.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sfq {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("TransmonSpec: " + what);
}

// Row-scales `u` by exp(-i E_k dt).
void apply_free_phases(ComplexMatrix& u, const std::vector<double>& energies, double dt) {
  for (Eigen::Index k = 0; k < u.rows(); ++k) {
    const Complex phase = std::polar(1.0, -energies[static_cast<std::size_t>(k)] * dt);
    u.row(k) *= phase;
  }
}

}  // namespace

TransmonSpec TransmonSpec::from_hz(int levels, double f01_hz, double anharmonicity_hz,
                                   double self_capacitance, double coupling_capacitance) {
  TransmonSpec spec;
  spec.levels = levels;
  spec.omega01 = kTwoPi * f01_hz;
  spec.anharmonicity = kTwoPi * anharmonicity_hz;
  spec.self_capacitance = self_capacitance;
  spec.coupling_capacitance = coupling_capacitance;
  spec.validate();
  return spec;
}

double TransmonSpec::period() const { return kTwoPi / omega01; }

void TransmonSpec::validate() const {
  require(levels >= 2 && levels <= 10, "levels must be in [2, 10]");
  require(std::isfinite(omega01) && omega01 > 0.0, "omega01 must be positive");
  require(std::isfinite(anharmonicity) && anharmonicity >= 0.0 && anharmonicity < omega01,
          "anharmonicity must satisfy 0 <= alpha < omega01");
  require(std::isfinite(self_capacitance) && self_capacitance > 0.0,
          "self_capacitance must be positive");
  // Zero coupling is allowed: it is the undriven limit.
  require(std::isfinite(coupling_capacitance) && coupling_capacitance >= 0.0,
          "coupling_capacitance must be non-negative");
}

std::vector<double> spectrum(const TransmonSpec& spec) {
  spec.validate();
  std::vector<double> energies(static_cast<std::size_t>(spec.levels));
  for (int k = 0; k < spec.levels; ++k) {
    energies[static_cast<std::size_t>(k)] =
        k * spec.omega01 - spec.anharmonicity * k * (k - 1) / 2.0;
  }
  return energies;
}

double tip_angle(const TransmonSpec& spec, const PhysicalConstants& constants) {
  spec.validate();
  return spec.coupling_capacitance * constants.flux_quantum *
         std::sqrt(2.0 * spec.omega01 / (constants.reduced_planck * spec.self_capacitance));
}

PulseEnergy pulse_energy(const TransmonSpec& spec, const PhysicalConstants& constants) {
  spec.validate();
  const double w = spec.omega01;
  const double cc = spec.coupling_capacitance;
  const double phi0 = constants.flux_quantum;
  PulseEnergy e;
  e.joules = w * w * cc * cc * phi0 * phi0 / (2.0 * spec.loaded_capacitance());
  e.quanta = e.joules / (constants.reduced_planck * w);
  return e;
}

ComplexMatrix lowering_operator(int levels) {
  if (levels < 1) throw std::invalid_argument("lowering_operator: levels must be positive");
  ComplexMatrix a = ComplexMatrix::Zero(levels, levels);
  for (int k = 1; k < levels; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

UnitaryMatrix kick_unitary(int levels, double delta_theta) {
  if (!std::isfinite(delta_theta)) throw std::invalid_argument("kick angle must be finite");
  if (std::abs(delta_theta) >= kPi) {
    throw std::invalid_argument("kick angle must satisfy |delta_theta| < pi");
  }
  const ComplexMatrix a = lowering_operator(levels);
  // G = (dtheta/2)(a^dagger - a) is anti-Hermitian; iG is Hermitian with
  // eigenpairs (lambda, v), so exp(G) = V exp(-i Lambda) V^dagger.
  const ComplexMatrix hermitian = Complex(0.0, 1.0) * (delta_theta / 2.0) * (a.adjoint() - a);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian);
  const ComplexVector phases =
      eig.eigenvalues().unaryExpr([](double l) { return std::polar(1.0, -l); });
  ComplexMatrix u = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
  return UnitaryMatrix::checked(std::move(u));
}

UnitaryMatrix sfq_kick_unitary(const TransmonSpec& spec, double delta_theta) {
  spec.validate();
  return kick_unitary(spec.levels, delta_theta);
}

UnitaryMatrix free_evolution(const TransmonSpec& spec, double duration) {
  if (!(duration >= 0.0)) throw std::invalid_argument("free_evolution: duration must be >= 0");
  const auto energies = spectrum(spec);
  ComplexMatrix u = ComplexMatrix::Identity(spec.levels, spec.levels);
  apply_free_phases(u, energies, duration);
  return UnitaryMatrix::unchecked(std::move(u));
}

UnitaryMatrix propagate_sequence(const TransmonSpec& spec, std::span<const PulseEvent> events,
                                 double delta_theta, double total_duration) {
  const auto energies = spectrum(spec);
  if (!(total_duration >= 0.0)) {
    throw std::invalid_argument("propagate_sequence: total_duration must be >= 0");
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (!(events[i].nominal_time >= 0.0)) {
      throw std::invalid_argument("propagate_sequence: nominal_time must be >= 0");
    }
    if (i > 0 && events[i].time() < events[i - 1].time()) {
      throw std::invalid_argument("propagate_sequence: events are not sorted by time");
    }
  }
  if (!events.empty() && events.back().time() > total_duration) {
    throw std::invalid_argument("propagate_sequence: event after total_duration");
  }

  const ComplexMatrix kick = kick_unitary(spec.levels, delta_theta).matrix();
  ComplexMatrix u = ComplexMatrix::Identity(spec.levels, spec.levels);
  ComplexMatrix scratch(spec.levels, spec.levels);
  double now = 0.0;
  for (const auto& event : events) {
    apply_free_phases(u, energies, event.time() - now);
    scratch.noalias() = kick * u;
    u.swap(scratch);
    now = event.time();
  }
  apply_free_phases(u, energies, total_duration - now);
  return UnitaryMatrix::unchecked(std::move(u));
}

}  // namespace sfq
