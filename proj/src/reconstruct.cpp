#include "tprep/reconstruct.hpp"

#include <cmath>
#include <random>
#include <string>

namespace tprep {

namespace {

void check_inputs(double cost, const char* cost_name, double p_succ) {
  if (!(std::isfinite(cost) && cost > 0.0))
    throw DomainError(std::string(cost_name) + " must be finite and positive");
  if (!(p_succ > 0.0 && p_succ <= 1.0))
    throw DomainError("p_succ must lie in (0, 1]");
}

}  // namespace

double reconstruct_expected(double v_single, double p_succ) {
  check_inputs(v_single, "v_single", p_succ);
  return v_single / p_succ;
}

double reconstruct_single(double v_expected, double p_succ) {
  check_inputs(v_expected, "v_expected", p_succ);
  return v_expected * p_succ;
}

ProtocolRecord fill_record(const ProtocolRecord& r) {
  ProtocolRecord out = r;
  if (!r.p_succ || !(*r.p_succ > 0.0 && *r.p_succ <= 1.0)) return out;

  if (r.v_single && !r.v_expected && *r.v_single > 0.0) {
    out.v_expected = reconstruct_expected(*r.v_single, *r.p_succ);
    out.provenance_of(NumericField::v_expected) = Provenance::reconstructed;
  } else if (r.v_expected && !r.v_single && *r.v_expected > 0.0) {
    out.v_single = reconstruct_single(*r.v_expected, *r.p_succ);
    out.provenance_of(NumericField::v_single) = Provenance::reconstructed;
  }
  return out;
}

RestartStats simulate_restarts(double v_single, double p_succ, std::uint64_t trials,
                               std::uint64_t seed) {
  check_inputs(v_single, "v_single", p_succ);
  if (trials == 0) throw DomainError("trials must be at least 1");

  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  // Attempt counts are integers, so the running sums stay exact far past 1e6 trials.
  std::uint64_t sum = 0;
  long double sum_sq = 0.0L;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::uint64_t attempts = 1;
    while (!(uniform() < p_succ)) ++attempts;
    sum += attempts;
    sum_sq += static_cast<long double>(attempts) * static_cast<long double>(attempts);
  }

  const long double n = static_cast<long double>(trials);
  const long double mean = static_cast<long double>(sum) / n;
  long double var = 0.0L;
  if (trials > 1) {
    var = (sum_sq - n * mean * mean) / (n - 1.0L);
    if (var < 0.0L) var = 0.0L;
  }

  RestartStats s;
  s.trials = trials;
  s.mean_attempts = static_cast<double>(mean);
  s.mean_cost = v_single * s.mean_attempts;
  s.std_error = v_single * static_cast<double>(std::sqrt(var / n));
  return s;
}

}  // namespace tprep
