#include <iostream>

#include "CLI11.hpp"
#include "modaldoc/cli.hpp"

int main(int argc, char** argv) {
  modaldoc::CommandOptions o;
  CLI::App app{"modaldoc: finite checker for modal doctrines"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Print the report as JSON");
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  app.add_option("--max-size", o.max_size, "Refuse enumerations above this size (0: no limit)")->capture_default_str();

  auto* check = app.add_subcommand("check", "Check the laws of declarations and run queries");
  check->add_option("file", o.file, "Model file")->required();
  check->add_option("names", o.names, "Declarations to check (default: all)");
  check->add_flag("--all", o.all, "Check every declaration");

  std::vector<std::string> from;
  auto* derive = app.add_subcommand("derive", "Derive a modality, comonad or adjunction");
  derive->add_option("file", o.file, "Model file")->required();
  derive->add_option("--from", from, "KIND NAME with KIND interior, adjunction or comonad")->expected(2)->required();
  auto* construction =
      derive->add_option("--construction", o.construction, "box, MC or MA; AM, CM or vertical; CM");
  bool modality = false;
  derive->add_flag("--modality", modality, "Derive the modality (box, AM or CM by source kind)")->excludes(construction);

  auto* em = app.add_subcommand("em", "Eilenberg-Moore doctrine of a comonad");
  em->add_option("file", o.file, "Model file")->required();
  em->add_option("name", o.names, "Comonad")->required()->expected(1);

  auto* factor = app.add_subcommand("factor", "Factor an adjunction through its stable subdoctrine");
  factor->add_option("file", o.file, "Model file")->required();
  factor->add_option("name", o.names, "Adjunction")->required()->expected(1);

  auto* temporal = app.add_subcommand("temporal", "Evaluate G, AG or EG on a coalgebra");
  temporal->add_option("file", o.file, "Model file (default: bundled coalgebras)");
  temporal->add_option("--op", o.op, "G, AG or EG")->required();
  temporal->add_option("--coalgebra", o.coalgebra, "Coalgebra name")->required();
  temporal->add_option("--alpha", o.alpha, "Subset like {s0,s1} (default: every subset)");

  app.add_subcommand("suite", "Run the acceptance criteria");

  for (auto* s : app.get_subcommands({})) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  o.command = app.get_subcommands().front()->get_name();
  if (from.size() == 2) {
    o.from_kind = from[0];
    o.from_name = from[1];
  }
  if (modality) o.construction = o.from_kind == "interior" ? "box" : o.from_kind == "adjunction" ? "AM" : "CM";
  return modaldoc::run_command(o, std::cout, std::cerr);
}
