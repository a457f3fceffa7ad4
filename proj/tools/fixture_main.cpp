#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fixture/fixture.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write a synthetic input bundle (weather archive, consumption, "
               "capacity factors, macro drivers, config) for testing and demos"};
  std::string out_dir = "fixture";
  heatrisk::fixture::FixtureSpec spec;
  app.add_option("--out", out_dir, "Target directory")->capture_default_str();
  app.add_option("--seed", spec.seed, "Generator seed")->capture_default_str();
  app.add_option("--first-weather-year", spec.first_weather_year)
      ->capture_default_str();
  app.add_option("--last-weather-year", spec.last_weather_year)
      ->capture_default_str();
  app.add_option("--target-year", spec.target_year)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const auto config = heatrisk::fixture::write_fixture(spec, out_dir);
    std::cout << "wrote " << config.string() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
