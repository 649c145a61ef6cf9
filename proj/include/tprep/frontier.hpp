#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tprep/dataset.hpp"
#include "tprep/record.hpp"

namespace tprep {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Flags the non-dominated points under simultaneous minimization of x and y.
/// Identical points do not dominate each other. Throws DomainError on empty
/// input or a non-finite / non-positive coordinate.
std::vector<bool> pareto_frontier(std::span<const Point2> points);

struct FrontierPoint {
  std::string record_id;
  Family family = Family::distillation;
  double epsilon_out = 0.0;
  double v_expected = 0.0;
  std::string cost_unit;
  std::optional<std::string> epsilon_def;
  bool on_frontier = false;
  bool supplementary = false;
  Provenance provenance = Provenance::missing;  // most derived of the two coordinates
};

struct RegimeMap {
  std::vector<FrontierPoint> points;
  std::vector<Diagnostic> diagnostics;
};

/// Cost-error regime map. Records are filled via fill_record first; those still
/// lacking epsilon_out, v_expected or cost_unit are skipped with a warning.
/// Frontier flags are computed within (family, cost_unit, epsilon_def) groups
/// of core records only; supplementary anchors are plotted with
/// on_frontier = false. Output is sorted by family, then epsilon_out
/// descending, then record id.
RegimeMap regime_map(std::span<const ProtocolRecord> core,
                     std::span<const ProtocolRecord> supplementary = {});

}  // namespace tprep
