#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tprep/record.hpp"

namespace tprep {

// Shor-style workload model. All demand formulas take the modulus size n in
// bits (n >= 2) and use the binary logarithm of n as a real number.

/// Logical data qubits: 3n + 0.002 n log2 n.
double q_data(std::int64_t n);
/// Toffoli count: 0.3 n^3 + 0.0005 n^3 log2 n.
double n_tof(std::int64_t n);
/// Measurement depth: 500 n^2 + n^2 log2 n.
double l_meas(std::int64_t n);
/// Logical T-state demand c_T * N_Tof(n).
double n_t(std::int64_t n, double c_t);

/// Unit label attached to q_data().
inline constexpr const char* kDataQubitUnit = "logical qubits";

struct WorkloadModel {
  std::int64_t n = 2048;
  double c_t = 4.0;
  double eta_t = 1e-2;  // share of the total failure budget given to T-state faults

  /// Throws DomainError unless n >= 2, c_t > 0 and eta_t in (0, 1).
  void validate() const;
};

struct BudgetReport {
  double n_t = 0.0;
  double per_t_target = 0.0;  // eta_T / N_T
  bool feasible = false;      // ratio <= 1
  double ratio = 0.0;         // epsilon_out / per_t_target
};

/// First-order union-bound filter N_T * epsilon_out <= eta_T.
BudgetReport budget_check(double epsilon_out, const WorkloadModel& w);

/// Largest n >= 2 passing budget_check, or nullopt when n = 2 already fails.
/// Exact: binary search over the monotone predicate, then n_max and n_max + 1
/// are re-verified directly. Throws std::overflow_error if the reach exceeds
/// 2^53.
std::optional<std::int64_t> n_max(double epsilon_out, double c_t, double eta_t);

struct LabeledValue {
  double value = 0.0;
  std::string unit;
  bool mixed_unit = false;
};

/// N_T(n; c_T) * V_exp, in the cost unit of V_exp.
double serial_cost(std::int64_t n, double c_t, double v_expected);
/// Same, labeled with the record's cost_unit. Throws DomainError when the
/// record has no v_expected (call fill_record first) or no cost_unit.
LabeledValue serial_cost(std::int64_t n, double c_t, const ProtocolRecord& r);

/// Q_data(n) + m * Q_peak for m parallel factories.
double total_qubits(std::int64_t n, std::int64_t m, double q_peak);
/// Labeled variant. mixed_unit is set when the record's footprint unit is not
/// kDataQubitUnit; the sum is then a template, not a physical count.
LabeledValue total_qubits(std::int64_t n, std::int64_t m, const ProtocolRecord& r);

/// ceil(N_T * (latency / p_succ) / L_meas(n)), at least 1. Assumes the latency
/// is expressed in measurement-depth steps; the caller owns that assertion.
std::int64_t factory_multiplicity(std::int64_t n, double c_t, double latency, double p_succ);

}  // namespace tprep
