#include <algorithm>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace compcat::cli;
  CLI::App app{"Checks finite categorical structures: categories, adjunctions, comprehension data."};
  app.footer(usage());
  Options opt;
  std::string command;
  std::vector<std::string> args;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  app.add_option("command", command, "command to run")->required();
  app.add_option("args", args, "files, an instance descriptor or block names");
  app.add_flag("--json", opt.json, "print structured records");
  auto* budget_opt = app.add_option("--budget", budget, "bound on enumeration work (cells, triples, pairs)");
  auto* seed_opt = app.add_option("--seed", seed, "seed for generated categories");
  app.add_option("--proj", opt.proj, "functor block playing p: E -> B");
  app.add_option("--section", opt.section, "functor block playing the section");
  app.add_option("--adjunction", opt.adjunction, "adjunction block joining section and p");
  app.add_option("--side", opt.side, "comprehension or quotient")->check(CLI::IsMember({"comprehension", "quotient"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (*budget_opt) opt.budget = budget;
  if (*seed_opt) opt.seed = seed;

  std::vector<Report> reports;
  Workspace ws;
  if (command == "run-pipeline") {
    Report load{"run-pipeline", {}, {}, {}};
    std::vector<std::string> names;
    try {
      for (const auto& a : args) {
        if (std::filesystem::is_regular_file(a))
          ws.load_file(a);
        else
          names.push_back(a);
      }
      reports = run_pipelines(ws, names, opt);
      if (reports.empty()) throw compcat::StructuralError("no pipeline to run");
    } catch (const std::exception& e) {
      load.error = std::string("error: ") + e.what();
      reports = {load};
    }
  } else {
    reports.push_back(run(command, args, ws, opt));
  }

  int status = 0;
  for (const auto& r : reports) status = std::max(status, r.exit_code());
  if (opt.json) {
    if (reports.size() == 1) {
      std::cout << reports.front().json().dump(2) << '\n';
    } else {
      nlohmann::ordered_json all = nlohmann::ordered_json::array();
      for (const auto& r : reports) all.push_back(r.json());
      std::cout << all.dump(2) << '\n';
    }
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) std::cout << (i ? "\n" : "") << reports[i].text();
  }
  return status;
}
