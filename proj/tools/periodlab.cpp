#include <cstdio>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "periodlab/commands.hpp"

using namespace periodlab;

namespace {

int emit(const RunReport& r) {
  std::cout << r.to_json();
  std::cerr << r.summary();
  return exit_status(r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for log-form currents and Mahler-measure periods"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  MahlerArgs mahler;
  auto* m = app.add_subcommand("mahler", "Mahler measure of a Laurent polynomial");
  m->add_option("poly", mahler.poly, "polynomial, e.g. \"8 + x + x^-1 + y + y^-1\"")->required();
  m->add_option("--budget", mahler.budget, "quadrature samples");
  m->add_option("--seed", mahler.seed, "randomization seed");
  m->add_flag("--hypergeometric", mahler.hypergeometric, "cross-check alpha + x + 1/x + y + 1/y with the 4F3 series");

  TripleArgs triple;
  double tol = -1.0;
  auto* t = app.add_subcommand("verify-triple", "Stokes identities of the log-form currents on P^n");
  t->add_option("--n", triple.n, "projective dimension (0..3)");
  t->add_option("--suite-size", triple.suite_size, "number of test forms");
  t->add_option("--tol", tol, "relative tolerance (default 1e-3 for n <= 1, 5e-3 above)");
  t->add_option("--seed", triple.seed, "randomization seed");

  CorrespondenceArgs corr;
  auto* c = app.add_subcommand("correspondence", "fiber, inverse-map and pullback checks");
  c->add_option("poly", corr.poly, "polynomial")->required();
  c->add_option("--samples", corr.samples, "random points");
  c->add_option("--seed", corr.seed, "randomization seed");

  PeriodArgs period;
  auto* p = app.add_subcommand("period", "period of the torus cycle against the Mahler measure");
  p->add_option("poly", period.poly, "polynomial")->required();
  p->add_option("--budget", period.budget, "quadrature samples");
  p->add_option("--seed", period.seed, "randomization seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*m) return emit(cmd_mahler(mahler));
    if (*t) {
      if (tol >= 0.0) triple.tol = tol;
      return emit(cmd_verify_triple(triple));
    }
    if (*c) return emit(cmd_correspondence(corr));
    if (*p) return emit(cmd_period(period));
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
