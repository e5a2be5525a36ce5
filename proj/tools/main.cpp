#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gdlsolve/corpus.hpp"
#include "gdlsolve/emm.hpp"
#include "gdlsolve/encoder.hpp"
#include "gdlsolve/lp2cnf.hpp"
#include "gdlsolve/parser.hpp"
#include "gdlsolve/pipeline.hpp"
#include "gdlsolve/semantics.hpp"
#include "gdlsolve/validate.hpp"
#include "gdlsolve/xssat.hpp"

using namespace gdlsolve;
using nlohmann::json;

namespace {

struct Loaded {
  GdlProgram program;
  ValidationReport report;
};

Loaded load(const std::string& path) {
  Loaded l;
  l.program = parse_gdl_file(path);
  l.report = validate(l.program);
  return l;
}

Term pick_maximizer(const GameSemantics& sem, const std::string& which) {
  if (which == "first") return sem.roles()[0];
  if (which == "second") return sem.roles()[1];
  throw std::invalid_argument("--maximizer must be first or second");
}

QuantMethod pick_quant(const std::string& q) {
  if (q == "baseline") return QuantMethod::Baseline;
  if (q == "dependency") return QuantMethod::Dependency;
  throw std::invalid_argument("--quant must be baseline or dependency");
}

struct SolveReport {
  std::string game_id, method, maximizer;
  Rational probability;
  std::string probability_pct;
  long long wall_time_ms = 0;
  json stats;
};

json report_json(const SolveReport& r) {
  return json{{"game", r.game_id},
              {"method", r.method},
              {"maximizer", r.maximizer},
              {"probability", rational_string(r.probability)},
              {"probability_pct", r.probability_pct},
              {"wall_time_ms", r.wall_time_ms},
              {"stats", r.stats}};
}

void print_report(const SolveReport& r, bool as_json) {
  if (as_json) {
    std::cout << report_json(r).dump(2) << '\n';
    return;
  }
  std::cout << r.game_id << "  method=" << r.method << "  maximizer=" << r.maximizer
            << "  probability=" << rational_string(r.probability) << "  pct="
            << r.probability_pct << "  time_ms=" << r.wall_time_ms << "  stats="
            << r.stats.dump() << '\n';
}

SolveReport run_emm(const std::string& game_id, const GameSemantics& sem,
                    const Term& maximizer, const std::string& which, int horizon,
                    std::optional<std::chrono::steady_clock::time_point> deadline) {
  auto t0 = std::chrono::steady_clock::now();
  EmmOptions opt;
  opt.deadline = deadline;
  EmmResult res = emm_solve(sem, maximizer, horizon, opt);
  auto t1 = std::chrono::steady_clock::now();
  SolveReport r;
  r.game_id = game_id;
  r.method = "emm";
  r.maximizer = which;
  r.probability = res.probability;
  r.probability_pct = percent_string(res.probability);
  r.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  r.stats = {{"nodes", res.nodes}, {"cache_hits", res.cache_hits}};
  if (res.best_first_move) r.stats["best_first_move"] = res.best_first_move->str();
  return r;
}

SolveReport run_xssat(const std::string& game_id, const GdlProgram& g,
                      const GameSemantics& sem, const Term& maximizer,
                      const std::string& which, int horizon, QuantMethod method,
                      std::optional<std::chrono::steady_clock::time_point> deadline) {
  auto t0 = std::chrono::steady_clock::now();
  SqaspProgram sp = encode(g, sem, horizon, maximizer, method);
  PipelineStats ps;
  XssatEvalOptions opt;
  opt.deadline = deadline;
  Rational v = solve_via_xssat(sp, opt, &ps);
  auto t1 = std::chrono::steady_clock::now();
  SolveReport r;
  r.game_id = game_id;
  r.method = method == QuantMethod::Baseline ? "xssat-baseline" : "xssat-dependency";
  r.maximizer = which;
  r.probability = v;
  r.probability_pct = percent_string(v);
  r.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  r.stats = {{"atoms", ps.num_atoms},
             {"aux_vars", ps.num_aux},
             {"clauses", ps.num_clauses},
             {"nodes", ps.eval.nodes},
             {"cache_hits", ps.eval.cache_hits}};
  return r;
}

std::string stem_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

int cmd_bench(const std::string& dir, int budget, bool as_json) {
  int mismatches = 0;
  for (const CorpusEntry& e : corpus(dir)) {
    for (const CorpusVariant& v : e.variants) {
      Loaded l = load(v.gdl_path);
      GameSemantics sem = GameSemantics::build(l.program);
      Term maximizer = pick_maximizer(sem, v.name);
      auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(budget);
      std::vector<SolveReport> reports;
      bool timeout = false;
      try {
        reports.push_back(run_emm(e.game_id, sem, maximizer, v.name, e.horizon, deadline));
        for (QuantMethod m : {QuantMethod::Baseline, QuantMethod::Dependency})
          reports.push_back(
              run_xssat(e.game_id, l.program, sem, maximizer, v.name, e.horizon, m, deadline));
      } catch (const TimeoutError&) {
        timeout = true;
      }
      for (const SolveReport& r : reports) {
        print_report(r, as_json);
        if (v.expected_pct && r.probability_pct != *v.expected_pct) {
          ++mismatches;
          std::cout << "MISMATCH " << e.game_id << " " << v.name << ": expected "
                    << *v.expected_pct << ", got " << r.probability_pct << '\n';
        }
      }
      for (size_t i = 1; i < reports.size(); ++i)
        if (reports[i].probability != reports[0].probability) {
          ++mismatches;
          std::cout << "MISMATCH " << e.game_id << " " << v.name << ": " << reports[i].method
                    << " disagrees with emm\n";
        }
      if (timeout)
        std::cout << e.game_id << " " << v.name << ": timeout after " << budget << "s (ran "
                  << reports.size() << "/3 methods)\n";
    }
  }
  return mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GDL stochastic game solver"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "structured output");

  std::string file, maximizer_s = "first", quant_s = "baseline", method_s = "emm";
  std::string emit = "sqasp", out_path, corpus_dir = GDLSOLVE_CORPUS_DIR;
  int horizon = 1, budget = 120;

  auto* validate_cmd = app.add_subcommand("validate", "check a GDL description");
  validate_cmd->add_option("file", file)->required();

  auto* ground_cmd = app.add_subcommand("ground", "dump the ground temporal program");
  ground_cmd->add_option("file", file)->required();
  ground_cmd->add_option("--horizon", horizon)->required();

  auto* emm_cmd = app.add_subcommand("emm", "solve by expectiminimax");
  emm_cmd->add_option("file", file)->required();
  emm_cmd->add_option("--horizon", horizon)->required();
  emm_cmd->add_option("--maximizer", maximizer_s);

  auto* encode_cmd = app.add_subcommand("encode", "write the quantified encoding");
  encode_cmd->add_option("file", file)->required();
  encode_cmd->add_option("--horizon", horizon)->required();
  encode_cmd->add_option("--maximizer", maximizer_s);
  encode_cmd->add_option("--quant", quant_s);
  encode_cmd->add_option("--emit", emit)->check(CLI::IsMember({"sqasp", "xssat"}));
  encode_cmd->add_option("--out", out_path)->required();

  auto* solve_cmd = app.add_subcommand("solve", "solve by either method");
  solve_cmd->add_option("file", file)->required();
  solve_cmd->add_option("--horizon", horizon)->required();
  solve_cmd->add_option("--maximizer", maximizer_s);
  solve_cmd->add_option("--method", method_s)->check(CLI::IsMember({"emm", "xssat"}));
  solve_cmd->add_option("--quant", quant_s);

  auto* bench_cmd = app.add_subcommand("bench", "run the corpus");
  bench_cmd->add_option("--corpus", corpus_dir);
  bench_cmd->add_option("--budget", budget);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) {
      Loaded l = load(file);
      std::cout << "valid: " << l.report.str() << '\n';
      return 0;
    }
    if (ground_cmd->parsed()) {
      Loaded l = load(file);
      GroundProgram gp = ground(temporal_extension(l.program, horizon),
                                {{"input", "does"}});
      std::cout << gp.dump();
      return 0;
    }
    if (emm_cmd->parsed() || solve_cmd->parsed()) {
      Loaded l = load(file);
      GameSemantics sem = GameSemantics::build(l.program);
      Term maximizer = pick_maximizer(sem, maximizer_s);
      SolveReport r;
      if (emm_cmd->parsed() || method_s == "emm")
        r = run_emm(stem_of(file), sem, maximizer, maximizer_s, horizon, std::nullopt);
      else
        r = run_xssat(stem_of(file), l.program, sem, maximizer, maximizer_s, horizon,
                      pick_quant(quant_s), std::nullopt);
      print_report(r, as_json);
      return 0;
    }
    if (encode_cmd->parsed()) {
      Loaded l = load(file);
      GameSemantics sem = GameSemantics::build(l.program);
      Term maximizer = pick_maximizer(sem, maximizer_s);
      SqaspProgram sp = encode(l.program, sem, horizon, maximizer, pick_quant(quant_s));
      if (emit == "sqasp") {
        std::ofstream(out_path) << sp.write();
      } else {
        XssatFormula f = to_xssat(sp);
        auto [cnf, vm] = completion(sp.program);
        std::ofstream(out_path) << write_xssat(f);
        std::ofstream(out_path + ".varmap") << varmap_sidecar(sp.program, vm);
      }
      std::cout << "wrote " << out_path << '\n';
      return 0;
    }
    if (bench_cmd->parsed()) return cmd_bench(corpus_dir, budget, as_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
