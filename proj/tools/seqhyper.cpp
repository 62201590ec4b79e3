#include <seqhyper/seqhyper.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

using Json = nlohmann::ordered_json;

namespace {

struct Owned {
  char* s = nullptr;
  ~Owned() { sh_string_free(s); }
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// A descriptor given inline as JSON or as the path of a JSON file.
Json space_argument(const std::string& arg) {
  std::string text = arg;
  auto first = arg.find_first_not_of(" \t\n");
  if (first == std::string::npos || (arg[first] != '{' && arg[first] != '[')) text = slurp(arg);
  return Json::parse(text);
}

int fail(sh_status s, const std::string& where = "") {
  std::cerr << "seqhyper: " << (where.empty() ? "" : where + ": ") << sh_status_name(s) << ": " << sh_last_error() << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified computations on hyperspaces of convergent sequences"};
  std::string config_file, scenario, space, task, seeds, out, adversary, strategy;
  std::optional<int> depth, rounds, max_fresh;
  bool list = false, no_transcripts = false, quiet = false;
  app.add_option("--config", config_file, "Run config file (JSON)");
  app.add_option("--scenario", scenario, "Preset scenario");
  app.add_option("--space", space, "Space descriptor: a JSON file or inline JSON");
  app.add_option("--task", task, "certify|metric|game|meager|diagnose|profile");
  app.add_option("--depth", depth, "Certification depth");
  app.add_option("--rounds", rounds, "Game rounds (meager: avoid steps)");
  app.add_option("--seeds", seeds, "Seed list such as 0-99 or 1,4,9");
  app.add_option("--out", out, "Directory for report.json and table.tsv");
  app.add_option("--adversary", adversary, "random|scripted:FILE|interactive");
  app.add_option("--strategy", strategy, "baire|psi-compose|ordinal-compose|duplicate-metric|sigma-duplicate");
  app.add_option("--max-fresh-indices", max_fresh, "Fresh sigma-product coordinates the random adversary may add");
  app.add_flag("--no-transcripts", no_transcripts, "Omit game transcripts from the report");
  app.add_flag("--list-scenarios", list, "Print the preset scenarios");
  app.add_flag("-q,--quiet", quiet, "Print only the summary line");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const char* name : {"omega1", "psi", "duplicate-cantor", "sigma", "nhsc-profile", "sum-second-category"}) {
      Owned cfg;
      if (sh_status s = sh_scenario(name, &cfg.s)) return fail(s);
      std::cout << name << "\t" << Json::parse(cfg.s).dump() << "\n";
    }
    return 0;
  }

  Json config;
  try {
    if (!scenario.empty()) {
      Owned cfg;
      if (sh_status s = sh_scenario(scenario.c_str(), &cfg.s)) return fail(s);
      config = Json::parse(cfg.s);
    }
    if (!config_file.empty()) {
      std::string text = slurp(config_file);
      Owned cfg;
      if (sh_status s = sh_config_parse(text.c_str(), &cfg.s)) return fail(s, config_file);
      Json file_config = Json::parse(cfg.s);
      for (auto& [k, v] : file_config.items()) config[k] = v;
    }
    if (!space.empty()) config["space"] = space_argument(space);
  } catch (const std::exception& e) {
    std::cerr << "seqhyper: " << e.what() << "\n";
    return 2;
  }
  if (!task.empty()) config["task"] = task;
  if (depth) config["depth"] = *depth;
  if (rounds) config["rounds"] = *rounds;
  if (!seeds.empty() || app.count("--seeds")) config["seeds"] = seeds;
  if (!out.empty()) config["out"] = out;
  if (!adversary.empty()) config["adversary"] = adversary;
  if (!strategy.empty()) config["strategy"] = strategy;
  if (max_fresh) config["max_fresh_indices"] = *max_fresh;
  if (no_transcripts) config["transcripts"] = false;
  if (!config.contains("schema")) config["schema"] = "seqhyper.config/1";

  Owned normalized;
  std::string text = config.dump(2);
  if (sh_status s = sh_config_parse(text.c_str(), &normalized.s)) return fail(s);

  Owned report, table;
  int exit_code = 0;
  Json cfg = Json::parse(normalized.s);
  bool interactive = cfg.value("adversary", std::string()) == "interactive" && cfg.value("task", std::string()) == "game";
  if (sh_status s = sh_run(normalized.s, interactive ? 1 : 0, &report.s, &table.s, &exit_code)) return fail(s);

  Json rep = Json::parse(report.s);
  for (const auto& w : rep["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
  if (cfg.value("out", std::string()).empty() && !quiet) {
    std::cout << rep.dump(2) << "\n";
  }
  std::size_t runs = rep["runs"].size();
  std::cout << "status: " << rep["status"].get<std::string>() << " (" << runs << (runs == 1 ? " run" : " runs");
  for (const auto& r : rep["runs"]) {
    if (r.contains("summary")) {
      std::cout << "; " << r["kind"].get<std::string>() << " " << r["summary"]["passed"] << "/" << r["summary"]["seeds"]
                << " seeds passed";
    }
  }
  std::cout << ")\n";
  return exit_code;
}
