#include "qk/commands.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
  CLI::App app{"Normal forms, deformed Koszul resolutions, and the quantized "
               "modular character for h-adic enveloping-algebra presentations"};
  app.require_subcommand(1);

  qk::JobConfig cfg;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--trunc", cfg.trunc, "truncation order N")->capture_default_str();
    sub->add_option("--degree", cfg.degree, "degree cap D")->capture_default_str();
    sub->add_option("--witness-degree", cfg.witness_degree, "witness degree cap")
        ->capture_default_str();
    sub->add_option("--format", cfg.format, "text|json")->capture_default_str();
    sub->add_option("--out", cfg.out, "output path (default stdout)");
  };

  struct Sub {
    const char* name;
    const char* help;
    int inputs;
  };
  const Sub subs[] = {
      {"confluence", "resolve all length-3 overlaps of a presentation", 1},
      {"koszul", "deformed Koszul resolution plus checks", 1},
      {"theta", "modular character of the top Ext module", 1},
      {"vee", "quantum-duality functor on a coordinate presentation", 1},
      {"link", "compare theta across quantum duality", 1},
      {"twist-dual", "dual products, coproducts, and the derived presentation", 1},
      {"hochschild", "star-product expansion, coboundary, gauge identities", 1},
      {"center", "center basis profile at a degree cap", 1},
      {"poincare", "Ext/Tor elementary-divisor comparison", 2},
  };

  std::vector<std::vector<std::string>> input_slots(std::size(subs));
  for (size_t k = 0; k < std::size(subs); ++k) {
    CLI::App* sub = app.add_subcommand(subs[k].name, subs[k].help);
    sub->add_option("inputs", input_slots[k], "input files")
        ->required()
        ->expected(subs[k].inputs);
    add_common(sub);
    sub->callback([&, k] {
      cfg.command = subs[k].name;
      cfg.inputs = input_slots[k];
    });
  }

  CLI11_PARSE(app, argc, argv);
  return qk::run_command(cfg, std::cerr);
}
