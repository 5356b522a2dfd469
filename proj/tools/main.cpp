#include <iostream>

#include "common.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fracdyn: box dimensions of spirals and entry-exit sequences, and the cyclicity they imply"};
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "INI file; [section] names match subcommands, flags override file values");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  std::vector<std::pair<CLI::App*, fdcli::Runner>> cmds;
  auto add = [&](fdcli::Runner r) { cmds.emplace_back(app.get_subcommands({}).back(), std::move(r)); };
  add(fdcli::register_spiral_dim(app));
  add(fdcli::register_table1(app));
  add(fdcli::register_entry_exit(app));
  add(fdcli::register_formulas(app));
  add(fdcli::register_gen_trig(app));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    for (auto& [sub, run] : cmds)
      if (sub->parsed()) return run();
  } catch (const fracdyn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.exit());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
