#include <CLI11.hpp>

#include "contractive_tools/commands.hpp"

int main(int argc, char** argv) {
  using contractive::tools::RunConfig;
  RunConfig cfg;
  CLI::App app{"Numerical checks for contractive analytic self-maps of the disc"};
  app.add_option("command", cfg.command, "dh | clark | b2 | mixing | zeros | cantor | content | report")
      ->required()
      ->check(CLI::IsMember({"dh", "clark", "b2", "mixing", "zeros", "cantor", "content", "report"}));

  std::string map, measure, set, out;
  double p = 0, tol = 0, K = 0, K1 = 0, eta = 0;
  auto* o_map = app.add_option("--map", map, "map description file (JSON)");
  auto* o_measure = app.add_option("--measure", measure, "measure description file (JSON)");
  auto* o_set = app.add_option("--set", set, "boundary set file (JSON)");
  app.add_option("--depth", cfg.depths, "depth, or comma-separated depths")->delimiter(',');
  app.add_option("--grid", cfg.grid_J, "hyperbolic grid covers |z| <= 1 - 2^-J");
  app.add_option("--angular-factor", cfg.angular_factor, "node spacing along rings, relative to ring spacing");
  auto* o_p = app.add_option("--p", p, "B2 exponent, or content exponent s");
  app.add_option("--alpha", cfg.alpha, "Clark parameter in turns");
  auto* o_out = app.add_option("--out", out, "output directory (stdout when absent)");
  app.add_option("--seed", cfg.seed, "random seed");
  auto* o_tol = app.add_option("--tol", tol, "tolerance (report: contractive margin)");
  auto* o_K = app.add_option("--K", K, "cantor: stopping threshold");
  auto* o_K1 = app.add_option("--K1", K1, "cantor: reset threshold (default K/12)");
  auto* o_eta = app.add_option("--eta", eta, "cantor: eta as a fraction of the realized coverage");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : contractive::tools::kInputError;
  }
  if (*o_map) cfg.map = map;
  if (*o_measure) cfg.measure = measure;
  if (*o_set) cfg.set = set;
  if (*o_out) cfg.out = out;
  if (*o_p) cfg.p = p;
  if (*o_tol) cfg.tol = tol;
  if (*o_K) cfg.K = K;
  if (*o_K1) cfg.K1 = K1;
  if (*o_eta) cfg.eta = eta;
  return contractive::tools::run(cfg);
}
