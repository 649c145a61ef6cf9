#include "tprep/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

#include "tprep/reconstruct.hpp"

namespace tprep {

std::vector<bool> pareto_frontier(std::span<const Point2> points) {
  if (points.empty()) throw DomainError("pareto_frontier needs at least one point");
  for (const auto& p : points)
    if (!(std::isfinite(p.x) && std::isfinite(p.y) && p.x > 0.0 && p.y > 0.0))
      throw DomainError("pareto_frontier coordinates must be finite and positive");

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(points[a].x, points[a].y) < std::tie(points[b].x, points[b].y);
  });

  // Sweep in x. A point is dominated iff some point with strictly smaller x has
  // y <= its y, or a point with equal x has strictly smaller y.
  std::vector<bool> flags(points.size(), false);
  double best_y_left = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && points[order[j]].x == points[order[i]].x) ++j;
    const double group_min = points[order[i]].y;  // sorted by y within the group
    for (std::size_t k = i; k < j; ++k) {
      const double y = points[order[k]].y;
      flags[order[k]] = y == group_min && y < best_y_left;
    }
    best_y_left = std::min(best_y_left, group_min);
    i = j;
  }
  return flags;
}

namespace {

Provenance most_derived(Provenance a, Provenance b) { return std::max(a, b); }

FrontierPoint to_point(const ProtocolRecord& r, bool supplementary) {
  FrontierPoint p;
  p.record_id = r.id;
  p.family = r.family;
  p.epsilon_out = *r.epsilon_out;
  p.v_expected = *r.v_expected;
  p.cost_unit = *r.cost_unit;
  p.epsilon_def = r.epsilon_def;
  p.supplementary = supplementary;
  p.provenance = most_derived(r.provenance_of(NumericField::epsilon_out),
                              r.provenance_of(NumericField::v_expected));
  return p;
}

void collect(std::span<const ProtocolRecord> records, bool supplementary, RegimeMap& out) {
  for (const auto& raw : records) {
    ProtocolRecord r = fill_record(raw);
    std::string missing;
    if (!r.epsilon_out) missing = "epsilon_out";
    else if (!r.v_expected) missing = "v_expected";
    else if (!r.cost_unit) missing = "cost_unit";
    if (!missing.empty()) {
      out.diagnostics.push_back(Diagnostic{Severity::warning, r.id, missing, "regime-skip",
                                           "record not plotted: " + missing +
                                               " is absent and cannot be reconstructed"});
      continue;
    }
    out.points.push_back(to_point(r, supplementary));
  }
}

}  // namespace

RegimeMap regime_map(std::span<const ProtocolRecord> core,
                     std::span<const ProtocolRecord> supplementary) {
  RegimeMap out;
  collect(core, false, out);
  collect(supplementary, true, out);

  using Key = std::tuple<Family, std::string, std::optional<std::string>>;
  std::map<Key, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    const auto& p = out.points[i];
    if (!p.supplementary) groups[Key{p.family, p.cost_unit, p.epsilon_def}].push_back(i);
  }
  for (const auto& [key, members] : groups) {
    std::vector<Point2> pts;
    pts.reserve(members.size());
    for (std::size_t i : members) pts.push_back({out.points[i].epsilon_out, out.points[i].v_expected});
    const auto flags = pareto_frontier(pts);
    for (std::size_t k = 0; k < members.size(); ++k) out.points[members[k]].on_frontier = flags[k];
  }

  std::stable_sort(out.points.begin(), out.points.end(),
                   [](const FrontierPoint& a, const FrontierPoint& b) {
                     if (a.family != b.family) return a.family < b.family;
                     if (a.epsilon_out != b.epsilon_out) return a.epsilon_out > b.epsilon_out;
                     return a.record_id < b.record_id;
                   });
  return out;
}

}  // namespace tprep
