#include "runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>
#include <sstream>
#include <thread>

#include "codec.hpp"
#include "metric.hpp"
#include "spaces.hpp"

namespace seqhyper {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::kSchema, what); }

const std::vector<std::string> kTasks{"certify", "metric", "game", "meager", "diagnose", "profile"};

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string where(const std::string& text, const std::string& key) {
  auto pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return "";
  auto [line, col] = line_col(text, pos);
  return "line " + std::to_string(line) + ", column " + std::to_string(col) + ": ";
}

std::vector<Json> descriptors(const Json& space) {
  if (space.is_array()) return std::vector<Json>(space.begin(), space.end());
  return {space};
}

Tri verdict_tri(Verdict v) { return v == Verdict::kPass ? Tri::kTrue : Tri::kFalse; }

Json check_json(const std::string& name, Tri status, Json witness = Json::object()) {
  return Json{{"check", name}, {"status", tri_name(status)}, {"witness", std::move(witness)}};
}

Tri fold(const Json& checks) {
  Tri out = Tri::kTrue;
  for (const auto& c : checks) {
    const std::string s = c["status"];
    if (s == tri_name(Tri::kFalse)) return Tri::kFalse;
    if (s != tri_name(Tri::kTrue)) out = Tri::kUnknown;
  }
  return out;
}

Json report_checks(const Report& r) { return r.to_json()["checks"]; }

// Runs fn(seed) for each seed, concurrently, and returns results in seed order.
template <typename Fn>
std::vector<Json> fan_out(const std::vector<std::uint64_t>& seeds, Fn fn, bool sequential) {
  std::vector<Json> out(seeds.size());
  if (sequential) {
    for (std::size_t i = 0; i < seeds.size(); ++i) out[i] = fn(seeds[i]);
    return out;
  }
  std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < seeds.size(); start += width) {
    std::vector<std::future<Json>> batch;
    for (std::size_t i = start; i < std::min(seeds.size(), start + width); ++i) {
      batch.push_back(std::async(std::launch::async, fn, seeds[i]));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) out[start + i] = batch[i].get();
  }
  return out;
}

std::vector<CanonicalOpen> read_script(const SpacePtr& x, const std::string& path) {
  std::ifstream f(path);
  if (!f) schema("cannot read scripted moves from " + path);
  Json j;
  try {
    j = Json::parse(f);
  } catch (const Json::parse_error& e) {
    schema(path + ": " + e.what());
  }
  if (!j.is_array()) schema(path + ": expected an array of moves");
  std::vector<CanonicalOpen> moves;
  for (const auto& m : j) moves.push_back(canonical_from_json(*x, m));
  return moves;
}

// ---------------------------------------------------------------- tasks

Json task_certify(const SpacePtr& x, const RunConfig& c) {
  Json checks = Json::array();
  int probed = 0;
  for (auto& p : x->points(c.depth)) {
    if (x->isolated(p)) continue;
    auto s = canonical_seq(x, p, c.depth);
    auto again = recertify(s, c.depth);
    checks.push_back(check_json("canonical sequence at " + p.to_string(), tri(again.ok()),
                                Json{{"limit", point_to_json(p)}, {"message", again.message}}));
    if (++probed == 8) break;
  }
  auto opens = enumerate_canonical(*x, std::min(c.depth, 3), 2);
  int disjoint_bad = 0;
  for (const auto& o : opens) disjoint_bad += !brute_disjoint(*x, o, c.depth);
  checks.push_back(check_json("enumerated canonical opens are disjoint", tri(disjoint_bad == 0),
                              Json{{"opens", opens.size()}, {"violations", disjoint_bad}}));
  return checks;
}

Json task_metric(const SpacePtr& x, const RunConfig& c, std::uint64_t seed) {
  XiMetric m(x);
  std::mt19937_64 rng(seed);
  auto pick = [&]() { return rng() % 9 == 0 ? Point::filter_point() : Point::nat(static_cast<std::int64_t>(rng() % 256)); };
  int bad_zero = 0, bad_sym = 0, bad_pos = 0, bad_tri = 0;
  const int triples = 1000;
  for (int i = 0; i < triples; ++i) {
    Point a = pick(), b = pick(), q = pick();
    Rational ab = m.d(a, b), ba = m.d(b, a);
    bad_zero += m.d(a, a) != 0;
    bad_sym += ab != ba;
    bad_pos += (a != b) != (ab > 0);
    bad_tri += m.d(a, q) > ab + m.d(b, q);
  }
  int balls = 0, ball_bad = 0;
  for (int i = 0; i < 20; ++i) {
    Point p = pick();
    int k = static_cast<int>(rng() % 12);
    auto u = m.ball_open(p, k);
    if (!u) continue;
    ++balls;
    for (std::int64_t n = 0; n < 256; ++n) {
      Point q = Point::nat(n);
      ball_bad += (m.d(p, q) < pow2_neg(k)) != x->member(*u, q);
    }
  }
  Json checks = Json::array();
  checks.push_back(check_json("d(x,x) = 0", tri(bad_zero == 0), Json{{"triples", triples}, {"violations", bad_zero}}));
  checks.push_back(check_json("symmetry", tri(bad_sym == 0), Json{{"violations", bad_sym}}));
  checks.push_back(check_json("positivity", tri(bad_pos == 0), Json{{"violations", bad_pos}}));
  checks.push_back(check_json("triangle inequality", tri(bad_tri == 0), Json{{"violations", bad_tri}}));
  checks.push_back(check_json("balls are basic opens", balls == 0 ? Tri::kUnknown : tri(ball_bad == 0),
                              Json{{"balls", balls}, {"violations", ball_bad}}));
  for (auto& e : report_checks(gdelta_profile(x, c.depth))) checks.push_back(e);
  return checks;
}

Json task_game(const SpacePtr& x, const Json& desc, const RunConfig& c, std::uint64_t seed, std::istream* in,
               std::ostream* out) {
  auto factory = strategy_for(x, desc, c.strategy);
  auto s = factory();
  AdversaryPtr a;
  std::string adv = c.adversary;
  if (adv == "random") {
    a = random_adversary(seed, RandomOptions{c.max_fresh_indices});
  } else if (adv == "interactive") {
    if (!in || !out) throw Error(ErrorCode::kPrecondition, "interactive play needs a terminal");
    a = interactive_adversary(*in, *out);
  } else {
    a = scripted_adversary(read_script(x, adv.substr(9)));
  }
  Episode e = play(x, *s, *a, c.rounds, c.depth);
  Json rec;
  rec["space"] = desc;
  rec["strategy"] = s->name();
  rec["adversary"] = a->name();
  rec["seed"] = seed;
  Json ej = e.to_json();
  for (auto& [k, v] : ej.items()) {
    if (k == "transcript" && !c.transcripts) continue;
    rec[k] = v;
  }
  Tri status = verdict_tri(e.verdict);
  if (status == Tri::kTrue && e.ledger.overall() == Tri::kFalse) status = Tri::kFalse;
  rec["status"] = tri_name(status);
  return rec;
}

Json task_meager(const SpacePtr& x, const RunConfig& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CanonicalOpen> multi;
  for (auto& o : enumerate_canonical(*x, 3, 3)) {
    if (o.pieces.size() >= 2) multi.push_back(o);
  }
  if (multi.empty()) throw Error(ErrorCode::kPrecondition, "no canonical open with two pieces at depth 3");
  const CanonicalOpen& o = multi[rng() % multi.size()];
  auto order = nwd_decompose(*x, o, c.rounds);
  Json steps = Json::array();
  int bad = 0;
  CanonicalOpen v = o;
  for (int i = 0; i < c.rounds && i < static_cast<int>(order.size()); ++i) {
    const NwdPiece& np = order[static_cast<std::size_t>(i)];
    Json step{{"step", i}, {"U", o.pieces[np.piece].to_string()}, {"n", np.n}};
    try {
      auto r = nwd_avoid(x, o, v, np, c.depth);
      bool inside = include(*x, r.open, v).ok();
      bool hit = member(r.witness, r.open) == Tri::kTrue;
      bool escapes = true;
      if (x->member(o.pieces[np.piece], r.witness.limit())) {
        auto away = r.witness.outside(o.pieces[np.piece]);
        escapes = away && static_cast<int>(away->size()) >= np.n + 1;
        step["escape-count"] = away ? Json(away->size()) : Json(nullptr);
      } else {
        step["escape-count"] = "infinite";
      }
      step["pieces"] = r.open.pieces.size();
      step["verified"] = inside && hit && escapes;
      bad += !(inside && hit && escapes);
      v = r.open;
    } catch (const Error& e) {
      step["verified"] = false;
      step["error"] = e.what();
      ++bad;
      break;
    }
    steps.push_back(step);
  }
  return Json{{"seed", seed},
              {"open", o.to_string()},
              {"status", tri_name(tri(bad == 0))},
              {"steps", steps},
              {"final", v.to_string()}};
}

Json sum_decomposition(const SpacePtr& x, const RunConfig& c) {
  auto y = canonical(*x, {Open::sum_side(0, Open::whole())});
  auto z = canonical(*x, {Open::sum_side(1, Open::whole())});
  auto yz = canonical(*x, {Open::sum_side(0, Open::whole()), Open::sum_side(1, Open::whole())});
  int sampled = 0, bad = 0, undecided = 0;
  int counts[3] = {0, 0, 0};
  for (auto& o : enumerate_canonical(*x, std::min(c.depth, 2), 3)) {
    auto s = sample_member(x, o, c.depth);
    if (!s) continue;
    ++sampled;
    Tri in[3] = {member(*s, y), member(*s, z), member(*s, yz)};
    int yes = 0;
    for (int i = 0; i < 3; ++i) {
      if (in[i] == Tri::kUnknown) ++undecided;
      if (in[i] == Tri::kTrue) {
        ++yes;
        ++counts[i];
      }
    }
    bad += yes != 1;
  }
  return check_json("each sampled member lies in exactly one summand", undecided ? Tri::kUnknown : tri(bad == 0),
                    Json{{"sampled", sampled},
                         {"S_c(Y)", counts[0]},
                         {"S_c(Z)", counts[1]},
                         {"<Y,Z>", counts[2]},
                         {"violations", bad}});
}

// A countably based xi summand is Baire: the strategy wins on a few seeds.
// A crowded summand is meager: an avoid chain runs through its decomposition.
Json summand_category(const SpacePtr& y, int side, const RunConfig& c) {
  std::string name = std::string(side == 0 ? "Y" : "Z") + " = " + y->kind();
  RunConfig sub = c;
  sub.transcripts = false;
  sub.adversary = "random";
  sub.strategy.clear();
  Json runs = Json::array();
  Tri status = Tri::kTrue;
  auto fold_in = [&](const Json& r) {
    Tri t = r["status"] == tri_name(Tri::kTrue) ? Tri::kTrue : r["status"] == tri_name(Tri::kFalse) ? Tri::kFalse : Tri::kUnknown;
    if (t == Tri::kFalse || status == Tri::kFalse) {
      status = Tri::kFalse;
    } else if (t == Tri::kUnknown) {
      status = Tri::kUnknown;
    }
    runs.push_back(r);
  };
  if (const auto* xs = dynamic_cast<const XiSpace*>(y.get()); xs && xs->filter().countable_base()) {
    sub.rounds = std::min(c.rounds, 20);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Json r = task_game(y, Json{{"kind", y->kind()}}, sub, seed, nullptr, nullptr);
      fold_in(Json{{"seed", seed}, {"verdict", r["verdict"]}, {"rounds", r["rounds"]}, {"status", r["status"]}});
    }
    return check_json("S_c(" + name + ") is Baire: nonempty player wins", status, Json{{"games", runs}});
  }
  if (y->crowded()) {
    sub.rounds = 4;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      Json r = task_meager(y, sub, seed);
      fold_in(Json{{"seed", seed}, {"steps", r["steps"].size()}, {"status", r["status"]}});
    }
    return check_json("S_c(" + name + ") is meager: avoid chain through the nowhere dense pieces", status,
                      Json{{"chains", runs}});
  }
  return check_json("S_c(" + name + ") category", Tri::kUnknown, Json{{"reason", "no certificate for this summand"}});
}

Json task_profile(const SpacePtr& x, const RunConfig& c) {
  Json checks = Json::array();
  if (const auto* xs = dynamic_cast<const XiSpace*>(x.get()); xs && xs->filter().countable_base()) {
    for (auto& e : report_checks(polish_profile(x, c.depth))) checks.push_back(e);
  }
  if (const auto* sum = dynamic_cast<const SumSpace*>(x.get())) {
    checks.push_back(sum_decomposition(x, c));
    for (int side = 0; side < 2; ++side) checks.push_back(summand_category(sum->side(side), side, c));
  }
  return checks;
}

}  // namespace

// ---------------------------------------------------------------- config

Json RunConfig::to_json() const {
  Json j;
  j["schema"] = schema;
  j["space"] = space;
  j["task"] = task;
  j["depth"] = depth;
  j["rounds"] = rounds;
  j["seeds"] = seeds;
  j["out"] = out;
  j["adversary"] = adversary;
  j["strategy"] = strategy;
  j["max_fresh_indices"] = max_fresh_indices;
  j["transcripts"] = transcripts;
  return j;
}

void RunConfig::validate() const {
  if (schema != kConfigSchema) {
    throw Error(ErrorCode::kSchema, "unsupported schema \"" + schema + "\", expected " + kConfigSchema);
  }
  if (space.is_null() || (space.is_array() && space.empty())) throw Error(ErrorCode::kSchema, "missing space descriptor");
  if (std::find(kTasks.begin(), kTasks.end(), task) == kTasks.end()) {
    throw Error(ErrorCode::kSchema, "task must be one of certify|metric|game|meager|diagnose|profile, got \"" + task + "\"");
  }
  if (depth < 1) throw Error(ErrorCode::kSchema, "depth must be at least 1");
  if (rounds < 0) throw Error(ErrorCode::kSchema, "rounds must be nonnegative");
  if (task == "game" && adversary != "random" && adversary != "interactive" && adversary.rfind("scripted:", 0) != 0) {
    throw Error(ErrorCode::kSchema, "adversary must be random, scripted:FILE or interactive");
  }
  if (task == "game" && adversary == "scripted:") throw Error(ErrorCode::kSchema, "scripted adversary needs a file");
  if (max_fresh_indices < 0) throw Error(ErrorCode::kSchema, "max_fresh_indices must be nonnegative");
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    try {
      auto dash = item.find('-');
      if (dash == std::string::npos) {
        out.push_back(std::stoull(item));
      } else {
        auto lo = std::stoull(item.substr(0, dash));
        auto hi = std::stoull(item.substr(dash + 1));
        if (hi < lo) schema("seed range " + item + " is reversed");
        for (auto s = lo; s <= hi; ++s) out.push_back(s);
      }
    } catch (const std::logic_error&) {
      schema("bad seed \"" + item + "\"");
    }
  }
  return out;
}

RunConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    schema("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!j.is_object()) schema("line 1, column 1: a config is a JSON object");
  RunConfig c;
  auto get = [&](const char* key, auto& dst) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(dst);
    } catch (const Json::exception& e) {
      schema(where(text, key) + "field \"" + key + "\": " + e.what());
    }
  };
  for (auto& [k, v] : j.items()) {
    static const std::vector<std::string> known{"schema", "space", "task", "depth", "rounds", "seeds", "out",
                                                "adversary", "strategy", "max_fresh_indices", "transcripts"};
    if (std::find(known.begin(), known.end(), k) == known.end()) schema(where(text, k) + "unknown field \"" + k + "\"");
  }
  get("schema", c.schema);
  if (!j.contains("space")) schema("line 1, column 1: missing field \"space\"");
  c.space = j["space"];
  get("task", c.task);
  get("depth", c.depth);
  get("rounds", c.rounds);
  if (j.contains("seeds")) {
    const Json& s = j["seeds"];
    try {
      if (s.is_string()) {
        c.seeds = parse_seeds(s.get<std::string>());
      } else {
        s.get_to(c.seeds);
      }
    } catch (const std::exception& e) {
      schema(where(text, "seeds") + "field \"seeds\": " + e.what());
    }
  }
  get("out", c.out);
  get("adversary", c.adversary);
  get("strategy", c.strategy);
  get("max_fresh_indices", c.max_fresh_indices);
  get("transcripts", c.transcripts);
  try {
    c.validate();
    for (const auto& d : descriptors(c.space)) build_space(d);
  } catch (const Error& e) {
    static const std::vector<std::string> order{"schema", "task", "depth", "rounds", "adversary", "space"};
    std::string msg = e.what();
    for (const auto& k : order) {
      if (msg.find(k) != std::string::npos || (k == "space" && e.code() == ErrorCode::kSchema)) {
        schema(where(text, k) + msg);
      }
    }
    throw;
  }
  return c;
}

RunConfig scenario(const std::string& name) {
  RunConfig c;
  c.seeds = parse_seeds("0-99");
  if (name == "omega1") {
    c.space = Json{{"kind", "ordinal-blocks"}, {"alpha", "w^3"}};
    c.task = "game";
    c.rounds = 30;
  } else if (name == "psi") {
    c.space = Json{{"kind", "psi"}, {"family", "branches"}, {"depth", 3}};
    c.task = "game";
    c.rounds = 20;
  } else if (name == "duplicate-cantor") {
    c.space = Json{{"kind", "duplicate"}, {"base", Json{{"kind", "cantor"}}}};
    c.task = "game";
    c.rounds = 30;
  } else if (name == "sigma") {
    c.space = Json{{"kind", "duplicate"}, {"base", Json{{"kind", "sigma"}}}};
    c.task = "game";
    c.rounds = 30;
    c.max_fresh_indices = 5;
  } else if (name == "nhsc-profile") {
    c.space = Json::array({Json{{"kind", "xi"}, {"filter", "frechet"}},
                           Json{{"kind", "xi"}, {"filter", "partition"}, {"partition", "valuation"}}});
    c.task = "profile";
    c.depth = 5;
    c.seeds.clear();
  } else if (name == "sum-second-category") {
    c.space = Json{{"kind", "sum"}, {"left", Json{{"kind", "xi"}, {"filter", "frechet"}}}, {"right", Json{{"kind", "dyadic"}}}};
    c.task = "profile";
    c.depth = 6;
    c.seeds.clear();
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown scenario \"" + name + "\"");
  }
  return c;
}

std::vector<std::string> scenario_names() {
  return {"omega1", "psi", "duplicate-cantor", "sigma", "nhsc-profile", "sum-second-category"};
}

StrategyFactory strategy_for(const SpacePtr& x, const Json& desc, const std::string& name) {
  std::string pick = name;
  if (pick.empty()) {
    std::string kind = desc.value("kind", std::string());
    if (kind == "xi") pick = "baire";
    if (kind == "psi") pick = "psi-compose";
    if (kind == "ordinal" || kind == "ordinal-blocks") pick = "ordinal-compose";
    if (kind == "duplicate") {
      std::string base = desc.contains("base") ? desc["base"].value("kind", std::string()) : "";
      pick = base == "sigma" ? "sigma-duplicate" : "duplicate-metric";
    }
  }
  if (pick == "baire") return [x] { return baire_strategy_countable_base(x); };
  if (pick == "psi-compose") return [x] { return psi_compose_strategy(x); };
  if (pick == "ordinal-compose") return [x] { return ordinal_compose_strategy(x); };
  if (pick == "duplicate-metric") return [x] { return duplicate_metric_strategy(x); };
  if (pick == "sigma-duplicate") return [x] { return sigma_duplicate_strategy(x); };
  throw Error(ErrorCode::kUnsupported, "no strategy " + (pick.empty() ? "for space " + desc.dump() : "\"" + pick + "\""));
}

// ---------------------------------------------------------------- run

RunResult run(const RunConfig& c, std::istream* in, std::ostream* out) {
  c.validate();
  RunResult res;
  bool seeded = c.task == "game" || c.task == "metric" || c.task == "meager";
  if (seeded && c.seeds.empty()) res.warnings.push_back("empty seed list: nothing was run, the report passes vacuously");
  bool interactive = c.task == "game" && c.adversary == "interactive";
  if (interactive && c.seeds.size() > 1) res.warnings.push_back("interactive play uses the first seed only");

  Json runs = Json::array();
  Tri overall = Tri::kTrue;
  auto merge = [&](Tri t) {
    if (t == Tri::kFalse || overall == Tri::kFalse) {
      overall = Tri::kFalse;
    } else if (t == Tri::kUnknown) {
      overall = Tri::kUnknown;
    }
  };

  if (c.task == "game") {
    res.table.push_back({"space", "seed", "strategy", "verdict", "rounds", "message"});
  } else if (c.task == "meager") {
    res.table.push_back({"space", "seed", "steps", "status", "final_pieces"});
  } else {
    res.table.push_back({"space", "check", "status"});
  }

  for (const auto& desc : descriptors(c.space)) {
    SpacePtr x = build_space(desc);
    Json r{{"space", desc}, {"kind", x->kind()}, {"task", c.task}};
    Tri status = Tri::kTrue;
    auto guarded = [&](auto fn) -> Json {
      try {
        return fn();
      } catch (const Error& e) {
        return Json{{"status", tri_name(Tri::kFalse)}, {"error", e.what()}, {"code", error_code_name(e.code())}};
      }
    };
    if (c.task == "game" || c.task == "meager" || c.task == "metric") {
      std::vector<std::uint64_t> seeds = c.seeds;
      if (interactive && seeds.size() > 1) seeds.resize(1);
      auto per_seed = fan_out(seeds, [&](std::uint64_t seed) {
        return guarded([&] {
          if (c.task == "game") return task_game(x, desc, c, seed, in, out);
          if (c.task == "meager") return task_meager(x, c, seed);
          Json checks = task_metric(x, c, seed);
          return Json{{"seed", seed}, {"status", tri_name(fold(checks))}, {"checks", checks}};
        });
      }, interactive);
      Json results = Json::array();
      int passed = 0;
      for (std::size_t i = 0; i < per_seed.size(); ++i) {
        Json& e = per_seed[i];
        Tri t = e["status"] == tri_name(Tri::kTrue) ? Tri::kTrue
                : e["status"] == tri_name(Tri::kFalse) ? Tri::kFalse
                                                       : Tri::kUnknown;
        if (t == Tri::kFalse) {
          status = Tri::kFalse;
        } else if (t == Tri::kUnknown && status == Tri::kTrue) {
          status = Tri::kUnknown;
        }
        passed += t == Tri::kTrue;
        std::string name = x->kind();
        if (c.task == "game") {
          res.table.push_back({name, std::to_string(seeds[i]), e.value("strategy", std::string("-")),
                               e.value("verdict", std::string("error")), std::to_string(e.value("rounds", 0)),
                               e.value("message", e.value("error", std::string()))});
        } else if (c.task == "meager") {
          res.table.push_back({name, std::to_string(seeds[i]), std::to_string(e.contains("steps") ? e["steps"].size() : 0),
                               e["status"], e.value("final", std::string("-"))});
        } else {
          for (const auto& ch : e.value("checks", Json::array())) {
            res.table.push_back({name + "#" + std::to_string(seeds[i]), ch["check"], ch["status"]});
          }
        }
        results.push_back(std::move(e));
      }
      r["summary"] = Json{{"seeds", seeds.size()}, {"passed", passed}};
      r["results"] = std::move(results);
    } else {
      Json checks = guarded([&] {
        if (c.task == "certify") return task_certify(x, c);
        if (c.task == "diagnose") return report_checks(diagnose(x, c.depth));
        return task_profile(x, c);
      });
      if (checks.is_object()) checks = Json::array({check_json("task", Tri::kFalse, checks)});
      status = fold(checks);
      for (const auto& ch : checks) res.table.push_back({x->kind(), ch["check"], ch["status"]});
      r["checks"] = std::move(checks);
    }
    r["status"] = tri_name(status);
    merge(status);
    runs.push_back(std::move(r));
  }

  res.report["schema"] = kReportSchema;
  res.report["config"] = c.to_json();
  res.report["status"] = tri_name(overall);
  res.report["warnings"] = res.warnings;
  res.report["runs"] = std::move(runs);
  res.exit_code = overall == Tri::kFalse ? 1 : 0;
  return res;
}

void write_outputs(const RunConfig& c, const RunResult& r) {
  if (c.out.empty()) return;
  std::filesystem::create_directories(c.out);
  std::ofstream rep(std::filesystem::path(c.out) / "report.json");
  rep << r.report.dump(2) << "\n";
  std::ofstream tab(std::filesystem::path(c.out) / "table.tsv");
  for (const auto& row : r.table) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::string cell = row[i];
      std::replace(cell.begin(), cell.end(), '\t', ' ');
      std::replace(cell.begin(), cell.end(), '\n', ' ');
      tab << (i ? "\t" : "") << cell;
    }
    tab << "\n";
  }
  if (!rep || !tab) throw Error(ErrorCode::kPrecondition, "could not write reports to " + c.out);
}

}  // namespace seqhyper
