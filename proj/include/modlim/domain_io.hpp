#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "modlim/domain.hpp"

namespace modlim::io {

/// Contents of a domain spec file before validation.
struct DomainDocument {
  domain::FunctionSpec spec;
  domain::Interval interval;
};

/// JSON syntax errors raise Errc::kParse with line and column; missing or
/// mistyped fields raise Errc::kMalformedSpec naming the field.
DomainDocument parse_domain_document(std::string_view text);
DomainDocument domain_document_from_json(const nlohmann::json& j);

domain::GraphDomain parse_domain(std::string_view text);
domain::GraphDomain load_domain(const std::filesystem::path& path);

nlohmann::json domain_to_json(const domain::BoundaryFunction& f);

/// Whole file as a string; Errc::kIo when it cannot be read.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// "x", "x:l" or "x:r" (also "x:left", "x:right").
domain::PrimeEnd parse_prime_end(std::string_view token, domain::Edge edge);
/// "a,b,c,d" with a, b on the bottom edge and c, d on the top edge.
domain::BoundaryQuadruple parse_quadruple(std::string_view text);
std::string format_prime_end(const domain::PrimeEnd& p);
std::string format_quadruple(const domain::BoundaryQuadruple& q);

/// Experiment description shared by the sweep-style commands.
struct ExperimentConfig {
  nlohmann::json domain;  // inline domain spec (file references are resolved)
  std::optional<std::string> quadruple;  // absent: full arcs
  std::vector<double> eps_list;
  std::vector<double> eta_list;
  std::vector<double> n_list;
  std::optional<double> h;  // fixed cell size (eta sweeps) or cap (eps sweeps)
  double cells_per_min_height = 8.0;
  double tol = 1e-3;
  std::uint64_t seed = 1;
  double bound = 0.02;  // acceptable relative error of the extrapolated limit
  int max_iter = 2000;
  std::optional<std::string> out;

  nlohmann::json to_json() const;
};

/// Relative "domain" paths are resolved against `base_dir`.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace modlim::io
