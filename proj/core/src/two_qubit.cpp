#include "sfq/two_qubit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "sfq/timing.hpp"

namespace sfq {
namespace {

constexpr int kMaxDim = 100;

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

ComplexMatrix embed_on_target(const TwoTransmonSpec& spec, const ComplexMatrix& op) {
  const int da = spec.qubit_a.levels;
  const int db = spec.qubit_b.levels;
  if (spec.drive_target == DriveTarget::A) return kron(op, ComplexMatrix::Identity(db, db));
  return kron(ComplexMatrix::Identity(da, da), op);
}

double wrap_phase(double phi) {
  phi = std::remainder(phi, kTwoPi);
  return phi <= -kPi ? phi + kTwoPi : phi;
}

}  // namespace

void TwoTransmonSpec::validate() const {
  qubit_a.validate();
  qubit_b.validate();
  if (!(std::isfinite(coupling_j) && coupling_j >= 0.0)) {
    throw std::invalid_argument("TwoTransmonSpec: coupling_j must be >= 0");
  }
  if (dim() > kMaxDim) {
    throw std::invalid_argument("TwoTransmonSpec: levels_a * levels_b exceeds 100");
  }
}

TwoTransmonSpec tuned_cz_pair(const TransmonSpec& qubit_b, double anharmonicity_a,
                              double coupling_j) {
  TwoTransmonSpec spec;
  spec.qubit_b = qubit_b;
  spec.qubit_a = qubit_b;
  spec.qubit_a.omega01 = qubit_b.omega01 - 2.0 * qubit_b.anharmonicity;
  spec.qubit_a.anharmonicity = anharmonicity_a;
  spec.coupling_j = coupling_j;
  spec.drive_target = DriveTarget::B;
  spec.validate();
  return spec;
}

ComplexMatrix static_hamiltonian(const TwoTransmonSpec& spec) {
  spec.validate();
  const auto ea = spectrum(spec.qubit_a);
  const auto eb = spectrum(spec.qubit_b);
  const int db = spec.qubit_b.levels;
  ComplexMatrix h = ComplexMatrix::Zero(spec.dim(), spec.dim());
  for (int i = 0; i < spec.qubit_a.levels; ++i) {
    for (int j = 0; j < db; ++j) h(i * db + j, i * db + j) = ea[i] + eb[j];
  }
  if (spec.coupling_j > 0.0) {
    const ComplexMatrix a = kron(lowering_operator(spec.qubit_a.levels),
                                 ComplexMatrix::Identity(db, db));
    const ComplexMatrix b = kron(ComplexMatrix::Identity(spec.qubit_a.levels,
                                                         spec.qubit_a.levels),
                                 lowering_operator(db));
    h += spec.coupling_j * (a.adjoint() * b + a * b.adjoint());
  }
  return h;
}

DressedBasis dressed_basis(const TwoTransmonSpec& spec) {
  const ComplexMatrix h = static_hamiltonian(spec);
  const int n = spec.dim();
  DressedBasis basis;
  if (spec.coupling_j == 0.0) {
    // Diagonal already; skip the solver so degenerate bare states stay unmixed.
    basis.energies = h.diagonal().real();
    basis.vectors = ComplexMatrix::Identity(n, n);
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
    basis.energies = eig.eigenvalues();
    basis.vectors = eig.eigenvectors();
  }
  basis.labels.resize(static_cast<std::size_t>(n));
  for (int bare = 0; bare < n; ++bare) {
    Eigen::Index best = 0;
    basis.vectors.row(bare).cwiseAbs2().maxCoeff(&best);
    basis.labels[static_cast<std::size_t>(bare)] = static_cast<int>(best);
  }
  return basis;
}

UnitaryMatrix two_qubit_propagate(const TwoTransmonSpec& spec, std::span<const PulseEvent> events,
                                  double delta_theta, double total_duration) {
  spec.validate();
  if (!(total_duration >= 0.0)) {
    throw std::invalid_argument("two_qubit_propagate: total_duration must be >= 0");
  }
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].time() < events[i - 1].time()) {
      throw std::invalid_argument("two_qubit_propagate: events are not sorted by time");
    }
  }
  if (!events.empty() && events.back().time() > total_duration) {
    throw std::invalid_argument("two_qubit_propagate: event after total_duration");
  }

  const DressedBasis basis = dressed_basis(spec);
  const ComplexMatrix& v = basis.vectors;
  const ComplexMatrix kick =
      embed_on_target(spec, kick_unitary(spec.driven().levels, delta_theta).matrix());
  const ComplexMatrix kick_dressed = v.adjoint() * kick * v;

  const int n = spec.dim();
  ComplexMatrix u = ComplexMatrix::Identity(n, n);
  ComplexMatrix scratch(n, n);
  auto evolve = [&](double dt) {
    for (int k = 0; k < n; ++k) u.row(k) *= std::polar(1.0, -basis.energies(k) * dt);
  };
  double now = 0.0;
  for (const auto& event : events) {
    evolve(event.time() - now);
    scratch.noalias() = kick_dressed * u;
    u.swap(scratch);
    now = event.time();
  }
  evolve(total_duration - now);
  return UnitaryMatrix::unchecked(v * u * v.adjoint());
}

CzResult cz_protocol(const TwoTransmonSpec& spec, int n2, int clock_substeps) {
  spec.validate();
  if (spec.qubit_a.levels < 4 || spec.qubit_b.levels < 4) {
    throw std::invalid_argument("cz_protocol: both qubits need at least 4 levels");
  }
  if (n2 < 1) throw std::invalid_argument("cz_protocol: n2 must be positive");
  if (clock_substeps < 1) throw std::invalid_argument("cz_protocol: clock_substeps must be >= 1");

  const DressedBasis basis = dressed_basis(spec);
  const int n = spec.dim();
  const int s11 = basis.labels[spec.index(1, 1)];
  const int raised =
      spec.drive_target == DriveTarget::B ? spec.index(1, 2) : spec.index(2, 1);

  // The doublet is the pair of eigenstates carrying most of the raised state.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return std::norm(basis.vectors(raised, x)) > std::norm(basis.vectors(raised, y));
  });
  int plus = order[0];
  int minus = order[1];
  if (basis.energies(minus) > basis.energies(plus)) std::swap(plus, minus);
  if (spec.coupling_j == 0.0) plus = minus = raised;

  CzResult result;
  result.doublet_splitting = basis.energies(plus) - basis.energies(minus);
  result.drive_frequency = basis.energies(plus) - basis.energies(s11);
  if (!(result.drive_frequency > 0.0)) {
    throw std::domain_error("cz_protocol: |11> -> |+> transition frequency is not positive");
  }
  result.below_selectivity =
      spec.coupling_j > 0.0 && n2 < result.drive_frequency / spec.coupling_j;

  const ComplexMatrix& v = basis.vectors;
  const ComplexMatrix x = embed_on_target(spec, lowering_operator(spec.driven().levels));
  const ComplexMatrix generator_dressed = v.adjoint() * (x.adjoint() - x) * v;
  const double element = std::abs(generator_dressed(plus, s11));
  if (element <= 0.0) throw std::domain_error("cz_protocol: |11> does not couple to |+>");
  result.delta_theta = kTwoPi / (n2 * element);

  const ComplexMatrix kick_dressed =
      v.adjoint() *
      embed_on_target(spec, kick_unitary(spec.driven().levels, result.delta_theta).matrix()) * v;

  const double tick = spec.driven().period() / clock_substeps;
  const double drive_period = kTwoPi / result.drive_frequency;
  std::map<std::int64_t, Eigen::VectorXcd> gap_phases;
  auto phases_for = [&](std::int64_t gap) -> const Eigen::VectorXcd& {
    auto it = gap_phases.find(gap);
    if (it == gap_phases.end()) {
      Eigen::VectorXcd p(n);
      for (int k = 0; k < n; ++k) p(k) = std::polar(1.0, -basis.energies(k) * gap * tick);
      it = gap_phases.emplace(gap, std::move(p)).first;
    }
    return it->second;
  };

  ComplexMatrix u = kick_dressed;
  ComplexMatrix scratch(n, n);
  std::int64_t previous = 0;
  for (int k = 1; k < n2; ++k) {
    const std::int64_t t = nearest_tick(k * drive_period / tick);
    u = phases_for(t - previous).asDiagonal() * u;
    scratch.noalias() = kick_dressed * u;
    u.swap(scratch);
    previous = t;
  }
  result.duration = previous * tick;

  auto diag = [&](int i, int j) { return u(basis.labels[spec.index(i, j)],
                                           basis.labels[spec.index(i, j)]); };
  result.conditional_phase = wrap_phase(std::arg(diag(1, 1)) - std::arg(diag(0, 1)) -
                                        std::arg(diag(1, 0)) + std::arg(diag(0, 0)));
  result.return_population = std::norm(diag(1, 1));
  return result;
}

}  // namespace sfq
