#include "sfq/budget.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace sfq {
namespace {

bool positive(double x) { return std::isfinite(x) && x > 0.0; }
bool non_negative(double x) { return std::isfinite(x) && x >= 0.0; }
bool unit(double x) { return x >= 0.0 && x <= 1.0; }

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

void JunctionBias::validate() const {
  if (!positive(critical_current)) {
    throw std::invalid_argument("JunctionBias: critical_current must be positive");
  }
  if (!(bias_fraction > 0.0 && bias_fraction < 1.0)) {
    throw std::invalid_argument("JunctionBias: bias_fraction must be in (0, 1)");
  }
  if (!non_negative(switch_rate)) {
    throw std::invalid_argument("JunctionBias: switch_rate must be >= 0");
  }
}

double junction_power(const JunctionBias& j, const PhysicalConstants& constants) {
  j.validate();
  return constants.flux_quantum * (j.bias_fraction * j.critical_current) * j.switch_rate;
}

void SubsystemSpec::validate() const {
  if (!non_negative(junctions_per_channel) || !non_negative(channels) || !non_negative(clock)) {
    throw std::invalid_argument("SubsystemSpec '" + name +
                                "': counts and clock must be non-negative");
  }
  if (!unit(duty_cycle) || !unit(activity)) {
    throw std::invalid_argument("SubsystemSpec '" + name +
                                "': duty_cycle and activity must be in [0, 1]");
  }
}

SubsystemPower subsystem_power(const SubsystemSpec& s, const PhysicalConstants& constants) {
  s.validate();
  JunctionBias j = s.junction;
  j.switch_rate = s.clock * s.activity;
  SubsystemPower p;
  p.per_channel = s.junctions_per_channel * junction_power(j, constants) * s.duty_cycle;
  p.total = p.per_channel * s.channels;
  return p;
}

double Conductivity::at(double kelvin) const { return prefactor * std::pow(kelvin, exponent); }

Conductivity conductivity_of(WiringMaterial material) {
  switch (material) {
    case WiringMaterial::kapton_hn:
      return {4.6e-3, 0.6};
    case WiringMaterial::nbti:
      return {0.027, 2.0};
    case WiringMaterial::custom:
      break;
  }
  throw std::invalid_argument("conductivity_of: custom material has no built-in law");
}

Conductivity WiringSpec::conductivity() const {
  if (material == WiringMaterial::custom) {
    if (!positive(custom.prefactor) || !(custom.exponent > -1.0)) {
      throw std::invalid_argument(
          "WiringSpec: custom material needs prefactor > 0 and exponent > -1");
    }
    return custom;
  }
  return conductivity_of(material);
}

void WiringSpec::validate() const {
  if (!non_negative(cross_section_area) || !positive(length)) {
    throw std::invalid_argument("WiringSpec: area must be >= 0 and length > 0");
  }
  if (!(non_negative(t_cold) && std::isfinite(t_hot) && t_hot > t_cold)) {
    throw std::invalid_argument("WiringSpec: need t_hot > t_cold >= 0");
  }
  (void)conductivity();
}

double wiring_heat(const WiringSpec& w) {
  w.validate();
  const Conductivity k = w.conductivity();
  const double n1 = k.exponent + 1.0;
  const double integral = k.prefactor * (std::pow(w.t_hot, n1) - std::pow(w.t_cold, n1)) / n1;
  return w.cross_section_area / w.length * integral;
}

double wiring_heat_quadrature(const WiringSpec& w, double relative_tolerance) {
  w.validate();
  const Conductivity k = w.conductivity();
  const std::function<double(double)> f = [&k](double t) { return k.at(t); };
  const double a = w.t_cold;
  const double b = w.t_hot;
  const double fa = f(a);
  const double fm = f(0.5 * (a + b));
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double scale = std::max(std::abs(whole), 1e-300);
  const double integral = simpson(f, a, b, fa, fm, fb, whole, relative_tolerance * scale, 50);
  return w.cross_section_area / w.length * integral;
}

WiringAreas wiring_geometry(double lines, double trace_width, double spacing,
                            double dielectric_thickness, double metal_thickness,
                            double groundplane_factor) {
  for (double x : {lines, trace_width, spacing, dielectric_thickness, metal_thickness,
                   groundplane_factor}) {
    if (!non_negative(x)) throw std::invalid_argument("wiring_geometry: dimensions must be >= 0");
  }
  WiringAreas areas;
  areas.dielectric = lines * (trace_width + spacing) * dielectric_thickness;
  areas.metal = lines * (trace_width * (1.0 + groundplane_factor)) * metal_thickness;
  return areas;
}

std::vector<Technology> default_technologies() {
  Technology cmos;
  cmos.name = "cryoCMOS";
  cmos.family = LogicFamily::cmos;

  Technology rsfq;
  rsfq.name = "RSFQ";
  rsfq.family = LogicFamily::rsfq;
  rsfq.critical_current = 250e-6;

  Technology rsfq_mk = rsfq;
  rsfq_mk.name = "RSFQ_mK";
  rsfq_mk.critical_current = 10e-6;

  Technology ersfq;
  ersfq.name = "RQL/ERSFQ";
  ersfq.family = LogicFamily::static_free_sfq;
  ersfq.critical_current = 10e-6;

  return {cmos, rsfq, rsfq_mk, ersfq};
}

double effective_activity(double activity) {
  return (activity + std::min(activity, 0.5)) / 2.0;
}

double device_power(const Technology& tech, double activity,
                    const PhysicalConstants& constants) {
  if (!unit(activity)) throw std::invalid_argument("device_power: activity must be in [0, 1]");
  const double a = effective_activity(activity);
  switch (tech.family) {
    case LogicFamily::cmos:
      return tech.leakage_current * tech.vdd +
             a * tech.capacitance * tech.vdd * tech.vdd * tech.clock;
    case LogicFamily::static_free_sfq:
    case LogicFamily::rsfq: {
      const double per_switch =
          constants.flux_quantum * tech.bias_fraction * tech.critical_current * tech.clock;
      const double dynamic = per_switch * a;
      if (tech.family == LogicFamily::static_free_sfq) return dynamic;
      return dynamic + tech.static_ratio * per_switch * effective_activity(1.0);
    }
  }
  throw std::invalid_argument("device_power: unknown logic family");
}

std::vector<ActivityRow> activity_curves(const std::vector<Technology>& technologies,
                                         const std::vector<double>& activity_grid) {
  if (activity_grid.empty()) throw std::invalid_argument("activity_curves: empty activity grid");
  std::vector<ActivityRow> rows;
  rows.reserve(technologies.size() * activity_grid.size());
  for (const auto& tech : technologies) {
    for (double a : activity_grid) rows.push_back({tech.name, a, device_power(tech, a)});
  }
  return rows;
}

HeterodyneReport heterodyne_baseline(double hemt_power, double qubits_per_amp,
                                     double amps_per_hemt, double twpa_pump_dissipation,
                                     double qubits) {
  if (!positive(qubits_per_amp) || !positive(amps_per_hemt)) {
    throw std::invalid_argument("heterodyne_baseline: multiplexing factors must be positive");
  }
  if (!non_negative(hemt_power) || !non_negative(twpa_pump_dissipation) ||
      !non_negative(qubits)) {
    throw std::invalid_argument("heterodyne_baseline: inputs must be non-negative");
  }
  HeterodyneReport r;
  r.twpa_count = qubits / qubits_per_amp;
  r.hemt_count = r.twpa_count / amps_per_hemt;
  r.hemt_total = r.hemt_count * hemt_power;
  r.twpa_total = r.twpa_count * twpa_pump_dissipation;
  return r;
}

FootprintReport footprint_report(double cell_width, double cell_height, double qubits,
                                 double control_width, double control_height) {
  for (double x : {cell_width, cell_height, qubits, control_width, control_height}) {
    if (!non_negative(x)) throw std::invalid_argument("footprint_report: inputs must be >= 0");
  }
  FootprintReport r;
  r.cell_area = cell_width * cell_height;
  r.array_area = r.cell_area * qubits;
  r.control_area = control_width * control_height;
  r.fits = r.control_area <= r.cell_area;
  return r;
}

StageBudget make_stage(std::string stage, double capacity, std::vector<BudgetLine> lines) {
  StageBudget s;
  s.stage = std::move(stage);
  s.capacity = capacity;
  s.lines = std::move(lines);
  for (const auto& line : s.lines) s.total += line.watts;
  s.headroom = s.capacity - s.total;
  return s;
}

BudgetReport build_budget(const BudgetConfig& c) {
  if (!non_negative(c.qubits)) throw std::invalid_argument("build_budget: qubits must be >= 0");
  if (c.qubits_per_group < 1) {
    throw std::invalid_argument("build_budget: qubits_per_group must be >= 1");
  }
  BudgetReport r;
  const SubsystemPower interface = subsystem_power(c.interface_chip);
  const SubsystemPower pgu = subsystem_power(c.pgu);

  const WiringAreas areas = wiring_geometry(c.lines, c.trace_width, c.trace_spacing,
                                            c.dielectric_thickness, c.metal_thickness,
                                            c.groundplane_factor);
  WiringSpec kapton;
  kapton.material = WiringMaterial::kapton_hn;
  kapton.cross_section_area = areas.dielectric;
  kapton.length = c.wire_length;
  kapton.t_hot = c.t_hot;
  kapton.t_cold = c.t_cold;
  WiringSpec nbti = kapton;
  nbti.material = WiringMaterial::nbti;
  nbti.cross_section_area = areas.metal;

  r.stages.push_back(make_stage("millikelvin", c.millikelvin_capacity,
                                {{"interface_chip", interface.total},
                                 {"kapton_heat", wiring_heat(kapton)},
                                 {"nbti_heat", wiring_heat(nbti)}}));
  r.stages.push_back(make_stage("3K", c.pulse_tube_capacity, {{"pgu", pgu.total}}));
  for (const auto& s : r.stages) r.grand_total += s.total;

  const auto groups = static_cast<long long>(
      std::ceil(c.qubits / static_cast<double>(c.qubits_per_group)));
  r.junctions.push_back({"interface_chip", std::llround(c.interface_chip.junctions_per_channel *
                                                        c.interface_chip.channels)});
  r.junctions.push_back({"pgu", std::llround(c.pgu.junctions_per_channel * c.pgu.channels)});
  r.junctions.push_back({"mux", mux_junctions(c.mux) * groups});
  r.junctions.push_back({"demux", demux_junctions(c.demux) * c.demux_per_group * groups});
  for (const auto& j : r.junctions) r.junction_total += j.junctions;

  r.heterodyne = heterodyne_baseline(c.hemt_power, c.qubits_per_amp, c.amps_per_hemt,
                                     c.twpa_pump_dissipation, c.qubits);
  r.footprint = footprint_report(c.cell_width, c.cell_height, c.qubits, c.control_width,
                                 c.control_height);

  if (c.pgu.activity == 0.21) {
    r.notes.push_back("pgu activity 0.21 is a calibration to 0.1 uW per channel");
  }
  for (const auto& s : r.stages) {
    if (s.headroom < 0.0) r.notes.push_back("stage " + s.stage + " exceeds its cooling capacity");
  }
  return r;
}

}  // namespace sfq
