#pragma once

#include <poncelet/projective.hpp>

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace poncelet::lab {

  inline constexpr const char* kSchema = "poncelet-lab/1";

  //! Malformed scenario; the message names the failing field.
  class SchemaError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  //! Command-line overrides applied on top of the scenario.
  struct RunOptions
  {
    std::optional<std::uint64_t> seed;
    std::optional<double> closure_tol;
    std::optional<int> max_order;
  };

  struct Report
  {
    nlohmann::json json;
    //! Chain elements for the optional CSV export.
    std::vector<Eigen::VectorXcd> elements;
  };

  auto parse_scenario(const std::string& text) -> nlohmann::json;
  auto load_scenario(const std::string& path) -> nlohmann::json;

  //! Dispatches to the module operation named by "command". Throws
  //! SchemaError or GeometryError.
  auto run_scenario(const nlohmann::json& scenario, const RunOptions& opts = {}) -> Report;

  //! Report for a geometry failure.
  auto error_report(const nlohmann::json& scenario, const std::string& code,
                    const std::string& message) -> nlohmann::json;

  void write_csv(const Report& report, std::ostream& out);

  //! FNV-1a of the compact dump.
  auto digest(const nlohmann::json& j) -> std::string;

}  // namespace poncelet::lab
