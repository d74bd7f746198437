// Command-line front end: loads game specifications, runs the solvers, and
// emits figure data (CSV) and equilibrium reports (JSON).

#include "ivg/imperfect_example.hpp"
#include "ivg/json_io.hpp"
#include "ivg/rule_search.hpp"
#include "ivg/wireless_example.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace {

using ivg::ValidationError;
using nlohmann::json;

struct RunConfig {
  std::string input_path;
  std::string out_dir = ".";
  double grid_step = 0.0;  // 0 = command default
  double rule_step = 0.02;
  double tolerance = 1e-9;
  std::vector<std::string> raw_params;
};

std::map<std::string, double> parse_params(const RunConfig& config) {
  std::map<std::string, double> out;
  for (const std::string& raw : config.raw_params) {
    const auto eq = raw.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ValidationError("--param expects key=value, got '" + raw + "'");
    }
    const std::string key = raw.substr(0, eq);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(raw.substr(eq + 1), &used);
    } catch (const std::exception&) {
      throw ValidationError("--param " + key + ": value is not a number");
    }
    if (used != raw.size() - eq - 1) {
      throw ValidationError("--param " + key + ": value is not a number");
    }
    out[key] = value;
  }
  return out;
}

double take(std::map<std::string, double>& params, const std::string& key,
            double fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double value = it->second;
  params.erase(it);
  return value;
}

void reject_leftovers(const std::map<std::string, double>& params,
                      const std::string& command) {
  if (params.empty()) return;
  std::string names;
  for (const auto& [key, value] : params) {
    if (!names.empty()) names += ", ";
    names += key;
  }
  throw ValidationError("unknown --param key(s) for " + command + ": " + names);
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write output file " + path.string());
  }
  out << body;
}

void write_json(const std::filesystem::path& path, const json& doc) {
  write_file(path, doc.dump(2) + "\n");
}

std::filesystem::path ensure_out_dir(const RunConfig& config) {
  std::filesystem::path dir(config.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ValidationError("output directory " + dir.string() + " is not usable");
  }
  return dir;
}

std::string number_tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

json profile_to_json(const ivg::MixedProfile& profile) {
  json out = json::array();
  for (const ivg::Vec& dist : profile.per_user) {
    out.push_back(std::vector<double>(dist.data(), dist.data() + dist.size()));
  }
  return out;
}

int cmd_finite(const RunConfig& config) {
  auto params = parse_params(config);
  reject_leftovers(params, "finite");
  const ivg::FiniteInterventionGame game = ivg::load_game(config.input_path);

  ivg::SolveOptions options;
  options.rule_grid_step = config.rule_step;
  options.profile_grid_step = config.grid_step > 0 ? config.grid_step : 0.05;
  options.tolerance = config.tolerance;
  const ivg::EquilibriumSummary summary = ivg::solve(game, options);

  json rule = json::array();
  const ivg::Mat& m = summary.witness_star.rule.matrix();
  for (int s = 0; s < m.rows(); ++s) {
    rule.push_back(std::vector<double>(m.row(s).begin(), m.row(s).end()));
  }
  const json doc = {{"v_bar", summary.v_bar},
                    {"v_star", summary.v_star},
                    {"v_tilde", summary.v_tilde},
                    {"witness_rule", rule},
                    {"witness_profile", profile_to_json(summary.witness_star.profile)},
                    {"grid_slack", summary.grid_slack}};
  write_json(ensure_out_dir(config) / "summary.json", doc);
  return 0;
}

int cmd_imperfect(const RunConfig& config) {
  auto overrides = parse_params(config);
  ivg::ImperfectParams params;
  params.p = take(overrides, "p", params.p);
  params.q = take(overrides, "q", params.q);
  params.r = take(overrides, "r", params.r);
  params.a_low = take(overrides, "a_low", params.a_low);
  params.a_high = take(overrides, "a_high", params.a_high);
  params.y_high = take(overrides, "y_high", params.y_high);
  params.y_low = take(overrides, "y_low", params.y_low);
  reject_leftovers(overrides, "imperfect");
  params.validate();

  const auto dir = ensure_out_dir(config);
  const double step = config.grid_step > 0 ? config.grid_step : 0.01;
  write_file(dir / ("fig4_p" + number_tag(params.p) + ".csv"),
             ivg::fig4_csv(ivg::fig4_data(params, step)));

  const auto [label, v_star] = ivg::classify(params);
  json doc = {{"case", std::string(1, label.label)},
              {"v_star", v_star},
              {"v_bar", params.v_bar()},
              {"gap", params.v_bar() - v_star},
              {"boundary", label.boundary}};
  if (params.x_term() != params.z_term()) {
    doc["alpha_bar"] = ivg::alpha_bar(params);
  }
  write_json(dir / "classification.json", doc);
  return 0;
}

int cmd_wireless(const RunConfig& config) {
  auto overrides = parse_params(config);
  ivg::WirelessParams params;
  const double n = take(overrides, "n", params.num_users);
  if (n < 1 || n != std::floor(n)) {
    throw ValidationError("--param n: number of users must be a positive integer");
  }
  params.num_users = static_cast<int>(n);
  params.quality_intercept = take(overrides, "q", params.quality_intercept);
  params.quality_slope = take(overrides, "b", params.quality_slope);
  params.user_max = take(overrides, "user_max", params.user_max);
  const bool a0_given = overrides.count("a0") != 0;
  params.a0_max = take(overrides, "a0", 5.0);
  reject_leftovers(overrides, "wireless");
  params.validate();

  const auto dir = ensure_out_dir(config);
  const double step = config.grid_step > 0 ? config.grid_step : 0.2;
  const int points =
      static_cast<int>(std::lround(params.user_max / step)) + 1;

  std::vector<double> region_levels = {0.0, 0.1, 0.51, 5.0};
  if (a0_given && std::find(region_levels.begin(), region_levels.end(),
                            params.a0_max) == region_levels.end()) {
    region_levels = {params.a0_max};
  }
  if (params.num_users == 2) {
    for (double level : region_levels) {
      ivg::WirelessParams slice = params;
      slice.a0_max = level;
      write_file(dir / ("region_a0_" + number_tag(level) + ".csv"),
                 ivg::region_csv(slice, points));
    }
    std::vector<double> a_i_values;
    for (int k = 0; k < points; ++k) a_i_values.push_back(k * step);
    write_file(dir / "fig6.csv",
               ivg::fig6_csv(ivg::fig6_data(params, a_i_values)));
  }

  const ivg::WirelessBenchmarks bench = ivg::benchmarks(params);
  const auto curve = ivg::v_star_curve(params, {params.a0_max}, step);
  const json doc = {{"v_bar", bench.v_bar},
                    {"v_tilde", bench.v_tilde},
                    {"a0_min", ivg::a0_min(params)},
                    {"v_star", curve.front().v_star}};
  write_json(dir / "benchmarks.json", doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intervention-game solver and figure-data emitter"};
  app.require_subcommand(1);

  RunConfig config;
  app.add_option("--out", config.out_dir, "Output directory");
  app.add_option("--grid-step", config.grid_step,
                 "Profile/alpha grid step (command-specific default)");
  app.add_option("--rule-step", config.rule_step, "Rule grid step");
  app.add_option("--tol", config.tolerance, "Equilibrium tolerance");
  app.add_option("--param", config.raw_params,
                 "Parameter override key=value (repeatable)");

  CLI::App* finite =
      app.add_subcommand("finite", "Solve a finite intervention game from JSON");
  finite->add_option("input", config.input_path, "Game JSON path")->required();
  CLI::App* imperfect = app.add_subcommand(
      "imperfect", "Two-user gatekeeper example: figure data + classification");
  CLI::App* wireless = app.add_subcommand(
      "wireless", "Power-control example: region/figure data + benchmarks");
  for (CLI::App* sub : {finite, imperfect, wireless}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (finite->parsed()) return cmd_finite(config);
    if (imperfect->parsed()) return cmd_imperfect(config);
    if (wireless->parsed()) return cmd_wireless(config);
  } catch (const ivg::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
  return 0;
}
