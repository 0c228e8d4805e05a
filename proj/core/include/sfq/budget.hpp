#pragma once

#include <string>
#include <vector>

#include "sfq/constants.hpp"
#include "sfq/fabric.hpp"

namespace sfq {

struct JunctionBias {
  double critical_current = 100e-6;  // A
  double bias_fraction = 0.75;
  double switch_rate = 5e9;  // Hz

  void validate() const;
};

/// P = Phi_0 * I_b * f, I_b = bias_fraction * I_c.
double junction_power(const JunctionBias& j, const PhysicalConstants& constants = kConstants);

struct SubsystemSpec {
  std::string name;
  double junctions_per_channel = 0.0;
  double channels = 0.0;
  double clock = 0.0;  // Hz
  double duty_cycle = 1.0;
  double activity = 1.0;
  /// Critical current and bias fraction; the switch rate is clock * activity.
  JunctionBias junction;

  void validate() const;
};

struct SubsystemPower {
  double per_channel = 0.0;  // W
  double total = 0.0;        // W
};

SubsystemPower subsystem_power(const SubsystemSpec& s,
                               const PhysicalConstants& constants = kConstants);

/// Power-law thermal conductivity kappa(T) = prefactor * (T / 1 K)^exponent.
struct Conductivity {
  double prefactor = 0.0;  // W / (m K)
  double exponent = 0.0;

  double at(double kelvin) const;
};

enum class WiringMaterial { kapton_hn, nbti, custom };

/// Kapton HN: 4.6e-3 T^0.6; NbTi: 0.027 T^2.
Conductivity conductivity_of(WiringMaterial material);

struct WiringSpec {
  WiringMaterial material = WiringMaterial::kapton_hn;
  Conductivity custom;  // used only for WiringMaterial::custom
  double cross_section_area = 0.0;  // m^2
  double length = 1.0;              // m
  double t_hot = 3.0;               // K
  double t_cold = 0.0;              // K

  Conductivity conductivity() const;
  void validate() const;
};

/// Q = (A / L) * integral of kappa from t_cold to t_hot, in closed form.
double wiring_heat(const WiringSpec& w);

/// Same integral by adaptive Simpson quadrature to `relative_tolerance`.
double wiring_heat_quadrature(const WiringSpec& w, double relative_tolerance = 1e-10);

struct WiringAreas {
  double dielectric = 0.0;  // m^2
  double metal = 0.0;       // m^2
};

/// dielectric = lines (width + spacing) t_dielectric;
/// metal = lines width (1 + groundplane_factor) t_metal.
WiringAreas wiring_geometry(double lines, double trace_width, double spacing,
                            double dielectric_thickness, double metal_thickness,
                            double groundplane_factor);

enum class LogicFamily { static_free_sfq, rsfq, cmos };

struct Technology {
  std::string name;
  LogicFamily family = LogicFamily::static_free_sfq;
  double clock = 10e9;             // Hz
  double critical_current = 10e-6;  // A, SFQ only
  double bias_fraction = 0.75;
  double static_ratio = 65.0;  // RSFQ static / full-activity dynamic
  double vdd = 0.5;            // V, CMOS only
  double capacitance = 0.5e-15;  // F, CMOS only
  double leakage_current = 1.5e-9;  // A, CMOS only
};

/// cryoCMOS, RSFQ (250 uA), RSFQ_mK (10 uA), RQL/ERSFQ (10 uA) at 10 GHz.
std::vector<Technology> default_technologies();

/// Even logic/memory mix with memory activity capped at 0.5.
double effective_activity(double activity);

/// Power per device at one activity factor.
double device_power(const Technology& tech, double activity,
                    const PhysicalConstants& constants = kConstants);

struct ActivityRow {
  std::string technology;
  double activity = 0.0;
  double power = 0.0;  // W
};

std::vector<ActivityRow> activity_curves(const std::vector<Technology>& technologies,
                                         const std::vector<double>& activity_grid);

struct HeterodyneReport {
  double hemt_count = 0.0;
  double hemt_total = 0.0;  // W at 3 K
  double twpa_count = 0.0;
  double twpa_total = 0.0;  // W at millikelvin
};

HeterodyneReport heterodyne_baseline(double hemt_power, double qubits_per_amp,
                                     double amps_per_hemt, double twpa_pump_dissipation,
                                     double qubits);

struct FootprintReport {
  double cell_area = 0.0;     // m^2
  double array_area = 0.0;    // m^2
  double control_area = 0.0;  // m^2 per channel
  bool fits = false;
};

FootprintReport footprint_report(double cell_width, double cell_height, double qubits,
                                 double control_width, double control_height);

/// Cooling capacity of each stage.
inline constexpr double kMillikelvinCapacity = 10e-3;  // W
inline constexpr double kPulseTubeCapacity = 10.0;     // W

struct BudgetLine {
  std::string name;
  double watts = 0.0;
};

struct StageBudget {
  std::string stage;
  double capacity = 0.0;
  std::vector<BudgetLine> lines;
  double total = 0.0;     // sum of lines, accumulated in line order
  double headroom = 0.0;  // capacity - total
};

struct JunctionTally {
  std::string name;
  long long junctions = 0;
};

/// Full interface budget. Stage totals are sums of their lines in the order
/// listed; the grand total sums stage totals in stage order.
struct BudgetReport {
  std::vector<StageBudget> stages;
  std::vector<JunctionTally> junctions;
  long long junction_total = 0;
  HeterodyneReport heterodyne;
  FootprintReport footprint;
  double grand_total = 0.0;
  std::vector<std::string> notes;
};

StageBudget make_stage(std::string stage, double capacity, std::vector<BudgetLine> lines);

/// Inputs of the full interface budget. Defaults are the 1e8-qubit system:
/// 1e7 flex lines, 20-junction interface channels at the millikelvin stage and
/// a 1000-cell PGU per qubit at 3 K.
struct BudgetConfig {
  double qubits = 1e8;

  SubsystemSpec interface_chip{"interface_chip", 20, 1e8, 5e9, 0.1, 1.0, {1e-6, 0.75, 0.0}};
  /// Activity 0.21 is a calibration, not a measured number.
  SubsystemSpec pgu{"pgu", 1000, 1e8, 30e9, 0.1, 0.21, {100e-6, 0.75, 0.0}};

  double lines = 1e7;
  double trace_width = 50e-6;  // m
  double trace_spacing = 50e-6;  // m
  double dielectric_thickness = 13e-6;  // m
  double metal_thickness = 100e-9;  // m
  double groundplane_factor = 2.0;
  double wire_length = 1.0;  // m
  double t_hot = 3.0;        // K
  double t_cold = 0.0;       // K

  /// Readout MUX and control DEMUX per group of qubits.
  int qubits_per_group = 100;
  MuxSpec mux{100, MuxVariant::merger_tree};
  DemuxSpec demux{10};
  int demux_per_group = 10;

  double hemt_power = 10e-3;  // W
  double qubits_per_amp = 100;
  double amps_per_hemt = 100;
  double twpa_pump_dissipation = 100e-9;  // W

  double cell_width = 100e-6;  // m
  double cell_height = 100e-6;
  double control_width = 20e-6;
  double control_height = 100e-6;

  double millikelvin_capacity = kMillikelvinCapacity;
  double pulse_tube_capacity = kPulseTubeCapacity;
};

BudgetReport build_budget(const BudgetConfig& config);

}  // namespace sfq
