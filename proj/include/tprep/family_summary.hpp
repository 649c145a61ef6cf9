#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "tprep/record.hpp"

namespace tprep {

enum class Direction { smaller_better, larger_better };

enum class SpokeField { v_single, v_expected, q_peak, latency, epsilon_out, completeness };

inline constexpr std::array<SpokeField, 6> kSpokeFields = {
    SpokeField::v_single, SpokeField::v_expected,  SpokeField::q_peak,
    SpokeField::latency,  SpokeField::epsilon_out, SpokeField::completeness};

std::string_view to_string(SpokeField f);

/// Floor used when the caller does not pick one.
inline constexpr double kDefaultSMin = 0.05;

struct SpokeScore {
  Family family = Family::distillation;
  SpokeField field = SpokeField::v_single;
  double score = 0.0;
  std::size_t n_rows = 0;
};

/// Min-max normalization onto [s_min, 1], optionally on log values. A
/// degenerate pool (max == min) scores 1 everywhere.
std::vector<double> normalize_scores(std::span<const double> values, Direction direction,
                                     bool log_scale, double s_min);

/// Six spokes per family, families in declaration order. Each field is
/// normalized over every record that carries it (pooled across families),
/// then a family's spoke is the median of its own rows' scores. A family with
/// no contributing rows gets exactly s_min with n_rows = 0.
///
/// Pass core records only; supplementary anchors never contribute.
std::vector<SpokeScore> family_radar(std::span<const ProtocolRecord> records, double s_min);

}  // namespace tprep
