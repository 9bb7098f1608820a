#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "shrinker/cli.hpp"

namespace {

void add_common(CLI::App* cmd, shrinker::RunConfig& config) {
  cmd->add_option("--model", config.model, "gaussian:k=<int> or cylinder:m=<int>,k=<int>")
      ->envname("SHRINKERLAB_MODEL");
  cmd->add_option("--out", config.out, "write the primary artifact here instead of stdout");
}

void add_grid(CLI::App* cmd, shrinker::RunConfig& config) {
  cmd->add_option("--t-min", config.t_min, "smallest sublevel t")->envname("SHRINKERLAB_T_MIN");
  cmd->add_option("--t-max", config.t_max, "largest sublevel t")->envname("SHRINKERLAB_T_MAX");
  cmd->add_option("--ppd", config.ppd, "points per decade (log spacing)")->envname("SHRINKERLAB_PPD");
  cmd->add_option("--spacing", config.spacing, "log or linear")->check(CLI::IsMember({"log", "linear"}));
  cmd->add_option("--points", config.points, "point count for linear spacing");
}

void add_numerics(CLI::App* cmd, shrinker::RunConfig& config) {
  cmd->add_option("--tol-rel", config.tol_rel, "relative quadrature tolerance")->envname("SHRINKERLAB_TOL_REL");
  cmd->add_option("--tol-abs", config.tol_abs, "absolute quadrature tolerance")->envname("SHRINKERLAB_TOL_ABS");
  cmd->add_option("--mc-samples", config.mc_samples, "Monte Carlo sample count")
      ->envname("SHRINKERLAB_MC_SAMPLES");
  cmd->add_option("--seed", config.seed, "seed for every random choice")->envname("SHRINKERLAB_SEED");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-function laboratory for rigid gradient Ricci shrinkers"};
  app.require_subcommand(1);
  shrinker::RunConfig config;

  CLI::App* models = app.add_subcommand("models", "catalog of constructible model shrinkers");
  std::string models_action = "list";
  models->add_option("action", models_action, "only 'list' is supported")->check(CLI::IsMember({"list"}));
  models->add_option("--out", config.out, "write the catalog here instead of stdout");

  CLI::App* volume = app.add_subcommand("volume", "sublevel volumes, areas and the co-area law");
  add_common(volume, config);
  add_grid(volume, config);
  volume->add_option("--json", config.json_out, "write the JSON check report here");

  CLI::App* frequency = app.add_subcommand("frequency", "H, J, h, N profile as CSV plus identity checks");
  add_common(frequency, config);
  add_grid(frequency, config);
  add_numerics(frequency, config);
  frequency->add_option("--modes", config.modes, "poly:d=..,idx=..,c=..;exp:j=..,parity=even|odd,c=..");
  frequency->add_option("--alpha", config.alpha, "weight exponent alpha >= 0");
  frequency->add_option("--engine", config.engine, "closed, quadrature or both")
      ->check(CLI::IsMember({"closed", "closed-form", "closed_form", "quadrature", "both"}));
  frequency->add_option("--json", config.json_out, "write the JSON check report here");

  CLI::App* verify = app.add_subcommand("verify", "run the full identity matrix; JSON report");
  add_common(verify, config);
  add_grid(verify, config);
  add_numerics(verify, config);
  verify->add_option("--combinations", config.combinations, "random combinations per scenario");

  CLI::App* doubling = app.add_subcommand("doubling", "doubling exponents L_emp, L_tight, L_paper");
  add_common(doubling, config);
  doubling->add_option("--modes", config.modes, "polynomial modes only");
  doubling->add_option("--alpha", config.alpha, "weight exponent alpha");
  doubling->add_option("--T", config.T, "window (1, T), T > 2");
  doubling->add_option("--epsilon", config.epsilon, "epsilon > 0 in L_paper");
  doubling->add_option("--lambda", config.lambda, "lambda >= 1 in L_paper");
  doubling->add_option("--t-min", config.t_min, "first t of the ball-doubling window");
  doubling->add_option("--json", config.json_out, "write the JSON check report here");

  CLI::App* dimension = app.add_subcommand("dimension", "dimension table of the polynomial family");
  add_common(dimension, config);
  dimension->add_option("--d-max", config.d_max, "largest degree cap");
  dimension->add_option("--json", config.json_out, "write the JSON check report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? shrinker::exit_code::kOk : shrinker::exit_code::kUsage;
  }

  for (CLI::App* sub : app.get_subcommands()) {
    const CLI::Option* model_option = sub->get_option_no_throw("--model");
    config.model_given = model_option != nullptr && model_option->count() > 0;
    return shrinker::run(sub->get_name(), config, std::cout, std::cerr);
  }
  return shrinker::exit_code::kUsage;
}
