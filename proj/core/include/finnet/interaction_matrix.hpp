#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "finnet/matrix.hpp"

namespace finnet {

enum class Measure { correlation, mutual_information, transfer_entropy, km_drift };
enum class Units { bits, dimensionless, per_step };

std::string_view measure_name(Measure m) noexcept;
std::optional<Measure> parse_measure(std::string_view name) noexcept;
std::string_view units_name(Units u) noexcept;
std::optional<Units> parse_units(std::string_view name) noexcept;

/// N×N matrix of one pairwise measure.
///
/// Orientation for directed measures: values(i, j) is the influence of asset
/// j on asset i (transfer entropy j→i, drift of asset i per unit of asset j).
/// `params` records every estimator setting that produced the values.
struct InteractionMatrix {
  std::vector<std::string> asset_ids;
  Matrix values;
  Measure measure = Measure::correlation;
  bool directed = false;
  Units units = Units::dimensionless;
  nlohmann::json params = nlohmann::json::object();

  std::size_t size() const noexcept { return asset_ids.size(); }
};

/// Throws Error(invalid_argument) if `m` breaks the InteractionMatrix
/// invariants: square, symmetric when undirected, non-negative MI off-diagonal.
void check_invariants(const InteractionMatrix& m);

}  // namespace finnet
