#include "tprep/family_summary.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "tprep/reconstruct.hpp"

namespace tprep {

std::string_view to_string(SpokeField f) {
  switch (f) {
    case SpokeField::v_single: return "v_single";
    case SpokeField::v_expected: return "v_expected";
    case SpokeField::q_peak: return "q_peak";
    case SpokeField::latency: return "latency";
    case SpokeField::epsilon_out: return "epsilon_out";
    case SpokeField::completeness: return "completeness";
  }
  return "?";
}

namespace {

void check_s_min(double s_min) {
  if (!(s_min >= 0.0 && s_min < 1.0)) throw DomainError("s_min must lie in [0, 1)");
}

std::optional<double> spoke_value(const ProtocolRecord& r, SpokeField f) {
  switch (f) {
    case SpokeField::v_single: return r.v_single;
    case SpokeField::v_expected: return r.v_expected;
    case SpokeField::q_peak: return r.q_peak;
    case SpokeField::latency: return r.latency;
    case SpokeField::epsilon_out: return r.epsilon_out;
    case SpokeField::completeness: return completeness_score(r);
  }
  return std::nullopt;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<double> normalize_scores(std::span<const double> values, Direction direction,
                                     bool log_scale, double s_min) {
  check_s_min(s_min);
  if (values.empty()) throw DomainError("normalize_scores needs at least one value");

  std::vector<double> x(values.begin(), values.end());
  for (double& v : x) {
    if (!std::isfinite(v)) throw DomainError("normalize_scores values must be finite");
    if (log_scale) {
      if (!(v > 0.0)) throw DomainError("log-scaled normalization needs positive values");
      v = std::log(v);
    }
  }
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *lo_it;
  const double hi = *hi_it;

  std::vector<double> out(x.size(), 1.0);
  if (hi == lo) return out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double t = (x[i] - lo) / (hi - lo);
    if (direction == Direction::smaller_better) t = 1.0 - t;
    out[i] = std::clamp(s_min + (1.0 - s_min) * t, s_min, 1.0);
  }
  return out;
}

std::vector<SpokeScore> family_radar(std::span<const ProtocolRecord> records, double s_min) {
  check_s_min(s_min);

  std::vector<ProtocolRecord> filled;
  filled.reserve(records.size());
  for (const auto& r : records) filled.push_back(fill_record(r));

  std::vector<SpokeScore> out;
  for (Family fam : kFamilies)
    for (SpokeField f : kSpokeFields) out.push_back(SpokeScore{fam, f, s_min, 0});

  for (std::size_t fi = 0; fi < kSpokeFields.size(); ++fi) {
    const SpokeField field = kSpokeFields[fi];
    std::vector<double> pool;
    std::vector<Family> owner;
    for (const auto& r : filled)
      if (auto v = spoke_value(r, field)) {
        pool.push_back(*v);
        owner.push_back(r.family);
      }
    if (pool.empty()) continue;

    const bool is_completeness = field == SpokeField::completeness;
    const auto scores = normalize_scores(
        pool, is_completeness ? Direction::larger_better : Direction::smaller_better,
        !is_completeness, s_min);

    for (std::size_t k = 0; k < kFamilies.size(); ++k) {
      std::vector<double> mine;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (owner[i] == kFamilies[k]) mine.push_back(scores[i]);
      if (mine.empty()) continue;
      SpokeScore& s = out[k * kSpokeFields.size() + fi];
      s.n_rows = mine.size();
      s.score = median(std::move(mine));
    }
  }
  return out;
}

}  // namespace tprep
