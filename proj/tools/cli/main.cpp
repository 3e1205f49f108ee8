#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>

#include "commands.hpp"
#include "dpgrad/errors.hpp"

using namespace dpgrad;
using namespace dpgrad::cli;

int main(int argc, char** argv) {
  CLI::App app{"Generator counts, Schur multipliers and rank gradients of direct products"};
  app.require_subcommand(1);
  std::string output;
  std::string log_level = "warn";
  int threads = 0;
  bool serial = false;
  app.add_option("-o,--output", output, "write the report here instead of stdout");
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);
  app.add_flag("--serial", serial, "run the serial code paths");
  app.add_option("--log-level", log_level, "warn or info (timings on stderr)")
      ->check(CLI::IsMember({"warn", "info"}));

  WittConfig witt;
  auto* w = app.add_subcommand("witt", "Witt numbers and the a_n, b_n table as CSV");
  w->add_option("--p", witt.p, "prime")->check(CLI::PositiveNumber);
  w->add_option("--n-max", witt.n_max, "last row")->required()->check(CLI::PositiveNumber);
  w->add_option("--alphabet", witt.alphabet, "free group rank")->check(CLI::PositiveNumber);
  w->add_option("--epsilon", witt.epsilon, "ratio threshold, e.g. 1/10");

  SchurConfig schur;
  auto* s = app.add_subcommand("schur", "Schur multipliers as JSON lines");
  s->add_option("--group", schur.groups, "group file or small-group name (repeatable)");
  s->add_option("--max-order", schur.max_order, "every stored group up to this order");
  s->add_option("--homology-cap", schur.homology_cap, "largest order for homology")->check(CLI::PositiveNumber);

  VerifyConfig verify;
  auto* v = app.add_subcommand("verify", "run a verification suite, JSON lines report");
  v->add_option("--suite", verify.suite, "suite name")->required();
  v->add_option("--max-order", verify.options.max_order, "largest group order (0: suite default)");
  v->add_option("--homology-cap", verify.options.homology_cap, "largest order for homology")->check(CLI::PositiveNumber);
  v->add_option("--seed", verify.options.seed, "seed for sampled instances");
  v->add_option("--fp-instances", verify.options.fp_instances, "sampled subgroups of F2 x F2");
  v->add_option("--fp-max-index", verify.options.fp_max_index, "largest index of a sampled subgroup")->check(CLI::Range(2, 100000));
  v->add_option("--n-max", verify.options.recursion_n_max, "recursion sweep range")->check(CLI::Range(2, 100000000));
  v->add_option("--t-max", verify.options.recursion_t_max, "largest t in the recursion grid")->check(CLI::PositiveNumber);
  v->add_option("--dense-max", verify.options.recursion_dense_max, "every k up to here, then a sparse grid");
  v->add_option("--search-cap", verify.options.limits.search_cap, "cap on generating-set searches")->check(CLI::PositiveNumber);
  v->add_flag("--failures-only", verify.failures_only, "print failing rows only");

  GradientConfig gradient;
  auto* g = app.add_subcommand("gradient", "run a subgroup sequence file");
  g->add_option("spec", gradient.spec_path, "sequence file")->required();
  g->add_option("--format", gradient.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  BoundsConfig bounds;
  auto* b = app.add_subcommand("bounds", "generator-count bounds for every subgroup of A x B");
  b->add_option("--a", bounds.a, "group file or small-group name")->required();
  b->add_option("--b", bounds.b, "group file or small-group name")->required();
  b->add_option("--search-cap", bounds.limits.search_cap, "cap on generating-set searches")->check(CLI::PositiveNumber);

  PresentConfig present;
  auto* p = app.add_subcommand("present", "presentation tools");
  p->add_option("action", present.action, "enumerate, subgroup, abelianize or snf")
      ->required()
      ->check(CLI::IsMember({"enumerate", "subgroup", "abelianize", "snf"}));
  p->add_option("input", present.input, "presentation file, or matrix file for snf")->required();
  p->add_option("--subgroup", present.subgroup, "subgroup generator file");
  p->add_option("--max-cosets", present.max_cosets, "coset enumeration limit")->check(CLI::PositiveNumber);
  p->add_option("--tietze-effort", present.tietze_effort, "Tietze simplification effort");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  if (threads > 0) omp_set_num_threads(threads);
  schur.parallel = verify.options.parallel = gradient.parallel = bounds.parallel = !serial;

  std::ostringstream buffer;
  const auto start = std::chrono::steady_clock::now();
  int code = kPass;
  try {
    if (*w) code = cmd_witt(witt, buffer);
    else if (*s) code = cmd_schur(schur, buffer);
    else if (*v) code = cmd_verify(verify, buffer);
    else if (*g) code = cmd_gradient(gradient, buffer);
    else if (*b) code = cmd_bounds(bounds, buffer);
    else code = cmd_present(present, buffer);
  } catch (const CapExceeded& e) {
    std::cerr << "dpgrad: " << e.what() << "\n";
    return kCap;
  } catch (const Overflow& e) {
    std::cerr << "dpgrad: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "dpgrad: " << e.what() << "\n";
    return kUsage;
  }

  if (output.empty()) {
    std::cout << buffer.str();
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "dpgrad: cannot write " << output << "\n";
      return kUsage;
    }
    out << buffer.str();
  }
  if (log_level == "info") {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "dpgrad: " << app.get_subcommands().front()->get_name() << " finished in " << secs
              << " s, exit " << code << "\n";
  }
  return code;
}
