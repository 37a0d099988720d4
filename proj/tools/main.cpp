#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

using decalage::cli::RunConfig;

namespace {

void common(CLI::App* sub, RunConfig& cfg, bool generation) {
  sub->add_option("inputs", cfg.inputs, "instance files (JSON) or fixture:<name>");
  sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--out", cfg.out, "write the report here instead of stdout");
  if (!generation) return;
  sub->add_option("--generate", cfg.generate, "generate instances: free, h1 or adversarial")
      ->check(CLI::IsMember({"free", "h1", "adversarial"}));
  sub->add_option("--seed", cfg.seed, "seed for generation and random lifts");
  sub->add_option("--count", cfg.count, "number of generated instances");
  sub->add_option("--ring", cfg.ring, "z, fp-poly[:p] or q-poly");
  sub->add_option("--xi", cfg.xi, "the prime: an integer for z (default 2), t - a for polynomial rings (default t)");
  sub->add_option("--max-degree", cfg.max_degree, "top degree of generated complexes");
  sub->add_option("--max-rank", cfg.max_rank, "largest stalk rank in generated complexes");
  sub->add_option("--poset", cfg.poset, "builtin:point|pseudo-circle|chain3|pseudo-sphere or a JSON file");
  sub->add_option("--budget", cfg.budget, "generation attempts per instance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decalage, Bockstein and Bialynicki-Birula checks on finite models"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* validate = app.add_subcommand("validate", "check that instance files are valid complexes or sheaves");
  common(validate, cfg, false);

  auto* lemmas = app.add_subcommand("check-lemmas", "run the decalage and Bockstein lemma suite");
  common(lemmas, cfg, true);
  lemmas->add_option("--lift-rounds", cfg.lift_rounds, "random re-lifts per Bockstein check");

  auto* theorem = app.add_subcommand("check-theorem", "compare the Bialynicki-Birula and image filtrations");
  common(theorem, cfg, true);

  auto* ss = app.add_subcommand("ss", "print spectral sequence pages");
  common(ss, cfg, true);
  ss->add_option("--filtration", cfg.filtration, "tau or hodge")->check(CLI::IsMember({"tau", "hodge"}));
  ss->add_option("--pages", cfg.pages, "number of pages");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : decalage::cli::kInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return decalage::cli::run(cfg, std::cout, std::cerr);
}
