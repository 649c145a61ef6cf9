#include "tprep/workload.hpp"

#include <cmath>
#include <stdexcept>

namespace tprep {

namespace {

constexpr std::int64_t kMaxReach = std::int64_t{1} << 53;

void check_n(std::int64_t n) {
  if (n < 2) throw DomainError("modulus size n must be at least 2");
}

void check_positive(double x, const char* name) {
  if (!(std::isfinite(x) && x > 0.0))
    throw DomainError(std::string(name) + " must be finite and positive");
}

void check_eta(double eta_t) {
  if (!(eta_t > 0.0 && eta_t < 1.0)) throw DomainError("eta_T must lie in (0, 1)");
}

// Shared by budget_check and n_max so both agree at the boundary.
double budget_ratio(double epsilon_out, double demand, double eta_t) {
  return epsilon_out / (eta_t / demand);
}

}  // namespace

double q_data(std::int64_t n) {
  check_n(n);
  const double x = static_cast<double>(n);
  return 3.0 * x + 0.002 * x * std::log2(x);
}

double n_tof(std::int64_t n) {
  check_n(n);
  const double x = static_cast<double>(n);
  const double cube = x * x * x;
  return 0.3 * cube + 0.0005 * cube * std::log2(x);
}

double l_meas(std::int64_t n) {
  check_n(n);
  const double x = static_cast<double>(n);
  return 500.0 * x * x + x * x * std::log2(x);
}

double n_t(std::int64_t n, double c_t) {
  check_positive(c_t, "c_T");
  return c_t * n_tof(n);
}

void WorkloadModel::validate() const {
  check_n(n);
  check_positive(c_t, "c_T");
  check_eta(eta_t);
}

BudgetReport budget_check(double epsilon_out, const WorkloadModel& w) {
  w.validate();
  check_positive(epsilon_out, "epsilon_out");
  BudgetReport r;
  r.n_t = n_t(w.n, w.c_t);
  r.per_t_target = w.eta_t / r.n_t;
  r.ratio = budget_ratio(epsilon_out, r.n_t, w.eta_t);
  r.feasible = r.ratio <= 1.0;
  return r;
}

std::optional<std::int64_t> n_max(double epsilon_out, double c_t, double eta_t) {
  check_positive(epsilon_out, "epsilon_out");
  check_positive(c_t, "c_T");
  check_eta(eta_t);

  auto fits = [&](std::int64_t n) { return budget_ratio(epsilon_out, n_t(n, c_t), eta_t) <= 1.0; };
  if (!fits(2)) return std::nullopt;

  // Invariant: fits(lo) && !fits(hi).
  std::int64_t lo = 2;
  std::int64_t hi = 4;
  while (fits(hi)) {
    if (hi >= kMaxReach) throw std::overflow_error("n_max exceeds 2^53");
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  if (!fits(lo) || fits(lo + 1)) throw std::logic_error("n_max search lost monotonicity");
  return lo;
}

double serial_cost(std::int64_t n, double c_t, double v_expected) {
  check_positive(v_expected, "v_expected");
  return n_t(n, c_t) * v_expected;
}

LabeledValue serial_cost(std::int64_t n, double c_t, const ProtocolRecord& r) {
  if (!r.v_expected) throw DomainError("record '" + r.id + "' has no v_expected");
  if (!r.cost_unit) throw DomainError("record '" + r.id + "' has no cost_unit");
  return LabeledValue{serial_cost(n, c_t, *r.v_expected), *r.cost_unit, false};
}

double total_qubits(std::int64_t n, std::int64_t m, double q_peak) {
  if (m < 1) throw DomainError("factory count m must be at least 1");
  check_positive(q_peak, "q_peak");
  return q_data(n) + static_cast<double>(m) * q_peak;
}

LabeledValue total_qubits(std::int64_t n, std::int64_t m, const ProtocolRecord& r) {
  if (!r.q_peak) throw DomainError("record '" + r.id + "' has no q_peak");
  if (!r.footprint_unit) throw DomainError("record '" + r.id + "' has no footprint_unit");
  LabeledValue out;
  out.value = total_qubits(n, m, *r.q_peak);
  out.mixed_unit = *r.footprint_unit != kDataQubitUnit;
  out.unit = out.mixed_unit ? std::string(kDataQubitUnit) + " + " + *r.footprint_unit
                            : std::string(kDataQubitUnit);
  return out;
}

std::int64_t factory_multiplicity(std::int64_t n, double c_t, double latency, double p_succ) {
  check_positive(latency, "latency");
  if (!(p_succ > 0.0 && p_succ <= 1.0)) throw DomainError("p_succ must lie in (0, 1]");
  double x = n_t(n, c_t) * (latency / p_succ) / l_meas(n);
  // Snap values within float round-off of an integer so exact ratios do not
  // round up by one.
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, nearest)) x = nearest;
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(x)));
}

}  // namespace tprep
