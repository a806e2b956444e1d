#include <poncelet/errors.hpp>
#include <poncelet/scenario.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv)
{
  CLI::App app{"Poncelet closure experiments driven by JSON scenarios"};
  std::string scenario_path;
  std::string inline_json;
  std::string csv_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> max_order;
  auto* file_opt = app.add_option("--scenario", scenario_path, "scenario file (JSON)");
  auto* json_opt = app.add_option("--json", inline_json, "inline scenario (JSON text)");
  file_opt->excludes(json_opt);
  app.add_option("--seed", seed, "override the scenario seed");
  app.add_option("--tol", tol, "closure tolerance");
  app.add_option("--csv", csv_path, "write chain elements as CSV");
  app.add_option("--max-order", max_order, "largest order searched");
  CLI11_PARSE(app, argc, argv);

  if (scenario_path.empty() && inline_json.empty())
  {
    std::cerr << "error: one of --scenario or --json is required\n";
    return 1;
  }

  nlohmann::json scenario;
  try
  {
    scenario = scenario_path.empty() ? poncelet::lab::parse_scenario(inline_json)
                                     : poncelet::lab::load_scenario(scenario_path);
    const poncelet::lab::RunOptions opts{seed, tol, max_order};
    const auto report = poncelet::lab::run_scenario(scenario, opts);
    std::cout << report.json.dump(2) << "\n";
    if (!csv_path.empty())
    {
      std::ofstream out(csv_path);
      if (!out)
      {
        std::cerr << "error: cannot write " << csv_path << "\n";
        return 1;
      }
      poncelet::lab::write_csv(report, out);
    }
    return 0;
  }
  catch (const poncelet::lab::SchemaError& e)
  {
    std::cerr << "schema error: " << e.what() << "\n";
    return 1;
  }
  catch (const poncelet::GeometryError& e)
  {
    std::cout << poncelet::lab::error_report(scenario, std::string(poncelet::to_string(e.code())),
                                             e.what()).dump(2)
              << "\n";
    std::cerr << "geometry error: " << e.what() << "\n";
    return 2;
  }
}
