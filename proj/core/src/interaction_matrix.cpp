#include "finnet/interaction_matrix.hpp"

#include <cmath>

#include "finnet/error.hpp"

namespace finnet {

std::string_view measure_name(Measure m) noexcept {
  switch (m) {
    case Measure::correlation: return "correlation";
    case Measure::mutual_information: return "mutual_information";
    case Measure::transfer_entropy: return "transfer_entropy";
    case Measure::km_drift: return "km_drift";
  }
  return "unknown";
}

std::optional<Measure> parse_measure(std::string_view name) noexcept {
  if (name == "correlation" || name == "corr") return Measure::correlation;
  if (name == "mutual_information" || name == "mi") return Measure::mutual_information;
  if (name == "transfer_entropy" || name == "te") return Measure::transfer_entropy;
  if (name == "km_drift" || name == "km") return Measure::km_drift;
  return std::nullopt;
}

std::string_view units_name(Units u) noexcept {
  switch (u) {
    case Units::bits: return "bits";
    case Units::dimensionless: return "dimensionless";
    case Units::per_step: return "per_step";
  }
  return "unknown";
}

std::optional<Units> parse_units(std::string_view name) noexcept {
  if (name == "bits") return Units::bits;
  if (name == "dimensionless") return Units::dimensionless;
  if (name == "per_step") return Units::per_step;
  return std::nullopt;
}

void check_invariants(const InteractionMatrix& m) {
  const std::size_t n = m.asset_ids.size();
  if (m.values.rows() != n || m.values.cols() != n)
    throw Error(Errc::invalid_argument, "interaction matrix is not N×N for its asset ids");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!m.directed && std::abs(m.values(i, j) - m.values(j, i)) > 1e-12)
        throw Error(Errc::invalid_argument, "undirected interaction matrix is not symmetric");
      if (m.measure == Measure::mutual_information && i != j && m.values(i, j) < 0.0)
        throw Error(Errc::invalid_argument, "negative mutual information");
    }
}

}  // namespace finnet
