#include <iostream>

#include <CLI11.hpp>

#include "tamloday/cli/job.hpp"

using namespace tamloday::cli;

int main(int argc, char** argv) {
  CLI::App app{"Equivariant Loday constructions of C_p-Tambara functors"};
  app.require_subcommand(1);
  JobSpec job;
  job.rings_dir = default_rings_dir();
  std::string group = "C2";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", job.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--rings-dir", job.rings_dir, "Directory searched for ring files");
  };
  auto degree = [&](CLI::App* sub) { sub->add_option("--max-degree", job.max_degree, "Simplicial truncation D"); };

  CLI::App* pi = app.add_subcommand("pi", "Homotopy Mackey functors of a Loday construction");
  pi->add_option("--group", group, "Cyclic group C<n>");
  pi->add_option("--space", job.space, "Space expression")->required();
  pi->add_option("--coeff", job.coeffs, "Coefficient expression")->required();
  pi->add_option("--cache-dir", job.cache_dir, "Result cache directory");
  degree(pi);
  common(pi);

  CLI::App* rel = app.add_subcommand("relative-pi", "Homotopy of a relative Loday construction");
  rel->add_option("--group", group, "Cyclic group C<n>");
  rel->add_option("--space", job.space, "Space expression")->required();
  rel->add_option("--base", job.base, "Base coefficient")->required();
  rel->add_option("--coeff", job.coeffs, "Coefficient expression")->required();
  rel->add_option("--cache-dir", job.cache_dir, "Result cache directory");
  degree(rel);
  common(rel);

  CLI::App* check = app.add_subcommand("check", "Check Tambara axioms of a coefficient, or of its Loday construction");
  check->add_option("--group", group, "Cyclic group C<n>");
  check->add_option("--coeff", job.coeffs, "Coefficient expression")->required();
  check->add_option("--space", job.space, "Space expression");
  degree(check);
  common(check);

  CLI::App* norm = app.add_subcommand("norm", "Norm construction of a ring");
  norm->add_option("--group", group, "Cyclic group C<p>");
  norm->add_option("--ring", job.ring, "Ring file")->required();
  common(norm);

  CLI::App* box = app.add_subcommand("box", "Box product of coefficients");
  box->add_option("--group", group, "Cyclic group C<p>");
  box->add_option("--coeff", job.coeffs, "Coefficient expression (repeat)")->required();
  common(box);

  CLI::App* cmp = app.add_subcommand("compare", "Verify a comparison isomorphism degreewise");
  cmp->add_option("mode", job.mode, "Comparison")
      ->required()
      ->check(CLI::IsMember({"rotation-hc", "subdivision", "reflection-bar", "suspension-bar", "properties"}));
  cmp->add_option("--n", job.n, "Group order n");
  cmp->add_option("--group", group, "Cyclic group C<p>");
  cmp->add_option("--coeff", job.coeffs, "Coefficient expression")->required();
  cmp->add_option("--space", job.space, "Space y for suspension-bar");
  cmp->add_flag("--flipped", job.flipped, "Use the sign-representation suspension");
  degree(cmp);
  common(cmp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  job.command = app.get_subcommands().front()->get_name();
  RunResult r;
  try {
    job.group = parse_group(group);
    r = run(job);
  } catch (const tamloday::Error& e) {
    r = {1, std::string("error: ") + e.what() + "\n"};
  }
  (r.exit_code == 0 ? std::cout : std::cerr) << r.out;
  return r.exit_code;
}
