#pragma once

#include <cstdint>

#include "tprep/record.hpp"

namespace tprep {

/// V_exp = V / P_succ. Throws DomainError unless v_single > 0 and p_succ in (0, 1].
double reconstruct_expected(double v_single, double p_succ);

/// V = V_exp * P_succ.
double reconstruct_single(double v_expected, double p_succ);

/// Fills whichever of v_single / v_expected is missing when the other one and
/// p_succ are present. The filled field is tagged `reconstructed`. Records
/// with fewer than two of the three quantities come back unchanged.
ProtocolRecord fill_record(const ProtocolRecord& r);

struct RestartStats {
  std::uint64_t trials = 0;
  double mean_cost = 0.0;
  double std_error = 0.0;  // of mean_cost
  double mean_attempts = 0.0;
};

/// Monte Carlo of the memoryless restart process behind V_exp = V / P_succ:
/// every attempt costs v_single and is accepted with probability p_succ;
/// failed attempts are discarded in full.
///
/// Draws come from std::mt19937_64 seeded with `seed`; each draw is mapped to
/// [0, 1) from its top 53 bits, and an attempt succeeds iff the draw < p_succ.
/// The result is bit-reproducible for a given (inputs, seed).
RestartStats simulate_restarts(double v_single, double p_succ, std::uint64_t trials,
                               std::uint64_t seed);

}  // namespace tprep
