#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hullmin/contour.hpp"
#include "hullmin/geometry.hpp"
#include "hullmin/quadrature.hpp"
#include "hullmin/requirement.hpp"

namespace hullmin::io {

using json = nlohmann::json;

json to_json(const ConvexBody& body);
ConvexBody body_from_json(const json& j);

json to_json(const Quadrature& q);
Quadrature quadrature_from_json(const json& j);

json to_json(const CertifiedBounds& b);
CertifiedBounds bounds_from_json(const json& j);

json to_json(const MonteCarloSpec& spec);
MonteCarloSpec montecarlo_from_json(const json& j);

/// Everything needed to rebuild and re-check a solve.
struct SolutionRecord {
  Quadrature quadrature;
  ContourSolution solution;
  std::optional<CertifiedBounds> bounds;
  std::string hypotheses;  // why bounds are absent, if they are
  BoundInputs bound_inputs;
};

json to_json(const SolutionRecord& rec);
SolutionRecord solution_from_json(const json& j);

/// Sidecar describing where a requirement table came from. Analytic kinds
/// keep their parameters so C can be evaluated off the table.
struct RequirementMeta {
  std::size_t dim = 2;
  std::string kind;  // circle, triangle, spikes, montecarlo, table
  json params = json::object();
  double lipschitz = 0.0;
  bool lipschitz_certified = true;
  double sup_norm = 0.0;
};

json to_json(const RequirementMeta& m);
RequirementMeta requirement_meta_from_json(const json& j);

/// Rebuilds the analytic requirement described by meta, if it is analytic.
std::optional<Requirement> analytic_from_meta(const RequirementMeta& meta);

/// Header "u_1,...,u_N,C".
void write_table_csv(const std::filesystem::path& path, const std::vector<TableRow>& rows);
std::vector<TableRow> read_table_csv(const std::filesystem::path& path);

std::filesystem::path meta_path(const std::filesystem::path& table);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace hullmin::io
