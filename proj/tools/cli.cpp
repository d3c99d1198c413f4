#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "expandlab/bounds.hpp"
#include "expandlab/error.hpp"
#include "expandlab/expanders.hpp"
#include "expandlab/expr.hpp"
#include "expandlab/search.hpp"
#include "expandlab/slopes.hpp"
#include "report.hpp"

namespace expandlab::cli {
namespace {

using report::Json;

struct Globals {
  std::optional<std::size_t> budget;
  std::optional<unsigned> threads;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::vector<std::string> sets;
  std::optional<std::string> family;
  std::optional<std::string> dump;
};

std::pair<std::int64_t, std::int64_t> parse_interval(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw Error(ErrorKind::ParseError, "interval '" + text + "' should look like lo..hi");
  try {
    std::size_t used = 0;
    std::int64_t lo = std::stoll(text.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument("lo");
    std::string rest = text.substr(dots + 2);
    std::int64_t hi = std::stoll(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("hi");
    return {lo, hi};
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "interval '" + text + "' should look like lo..hi");
  }
}

Budget resolve_budget(const Globals& g) {
  Budget b;
  if (const char* env = std::getenv("EXPANDLAB_BUDGET")) {
    try {
      b.max_elements = std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, std::string("EXPANDLAB_BUDGET='") + env + "' is not a count");
    }
  }
  if (g.budget) b.max_elements = *g.budget;
  return b;
}

/// --set NAME=FILE bindings plus --family, which binds A.
NamedSets load_sets(const Globals& g) {
  NamedSets sets;
  for (const auto& binding : g.sets) {
    auto eq = binding.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorKind::ParseError, "--set expects NAME=FILE, got '" + binding + "'");
    }
    sets.insert_or_assign(binding.substr(0, eq), read_set_file(binding.substr(eq + 1)));
  }
  if (g.family) sets.insert_or_assign("A", generate(parse_family(*g.family)));
  return sets;
}

const FiniteSet& need_a(const NamedSets& sets) {
  auto it = sets.find("A");
  if (it == sets.end()) throw Error(ErrorKind::MissingInput, "bind A with --set A=FILE or --family SPEC");
  return it->second;
}

report::Format parse_format(const std::string& f) {
  if (f == "csv") return report::Format::Csv;
  if (f == "text") return report::Format::Text;
  return report::Format::Json;
}

std::vector<BoundId> suite_bounds(const std::string& suite) {
  std::vector<BoundId> ids;
  if (suite == "exact" || suite == "all") ids.insert(ids.end(), std::begin(kExactBounds), std::end(kExactBounds));
  if (suite == "asymptotic" || suite == "all") {
    ids.insert(ids.end(), std::begin(kAsymptoticBounds), std::end(kAsymptoticBounds));
  }
  return ids;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact finite-set sum-product expander lab"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--budget", g.budget, "Maximum distinct elements per intermediate set");
  app.add_option("--threads", g.threads, "Worker thread cap")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", g.seed, "Seed for randomized steps");
  app.add_option("--set", g.sets, "Bind NAME=FILE (repeatable)");
  app.add_option("--family", g.family, "Generate A: ap:s:step:n, gp:s:r:n, rand:n:lo:hi:seed, rat:n:lo:hi:dmax:seed");
  app.add_option("--dump", g.dump, "Write the evaluated set to FILE");

  std::string expr_text;
  auto* eval_cmd = app.add_subcommand("eval", "Cardinality of a set expression");
  eval_cmd->add_option("expr", expr_text, "Expression, e.g. (A-A)/(A-A)")->required();

  std::string suite;
  BoundParams params;
  std::string preset = "reciprocal";
  auto* verify_cmd = app.add_subcommand("verify", "Check the bound suite on the bound sets");
  verify_cmd->add_option("suite", suite)->required()->check(CLI::IsMember({"exact", "asymptotic", "all"}));
  verify_cmd->add_option("--k", params.k, "Plunnecke k");
  verify_cmd->add_option("--l", params.l, "Plunnecke l");
  std::string alpha_text = "1";
  verify_cmd->add_option("--alpha", alpha_text, "Shift for GARAEV_SHEN, GS1, GS2, JORN");
  verify_cmd->add_option("--f", preset, "ENR convex preset")->check(CLI::IsMember({"reciprocal", "square"}));

  std::string trace_kind;
  int k_max = 3;
  std::string c_text = "1";
  std::optional<std::int64_t> forced_m;
  bool all_clusters = false;
  bool with_target = false;
  auto* trace_cmd = app.add_subcommand("trace", "Proof intermediates as a JSON trace");
  trace_cmd->add_option("kind", trace_kind)->required()->check(
      CLI::IsMember({"thm1", "thm2-chain", "kfold", "slopes"}));
  trace_cmd->add_option("--k", k_max, "Chain length (thm2-chain, kfold)");
  trace_cmd->add_option("--C", c_text, "Constant C (slopes)");
  trace_cmd->add_option("--force-m", forced_m, "Override M (slopes)");
  trace_cmd->add_flag("--all-clusters", all_clusters, "Materialize every cluster (slopes)");
  trace_cmd->add_flag("--target", with_target, "Also compute |(AA+A)/(AA+A)| (slopes)");

  std::string mode;
  std::string search_expr;
  std::int64_t m = 3;
  std::string universe = "1..6";
  std::string range = "1..100";
  std::int64_t iters = 1000;
  std::int64_t restarts = 4;
  auto* search_cmd = app.add_subcommand("search", "Minimize |expr(A)| over m-subsets");
  search_cmd->add_option("mode", mode)->required()->check(CLI::IsMember({"exhaustive", "local"}));
  search_cmd->add_option("expr", search_expr)->required();
  search_cmd->add_option("--m", m, "Subset size");
  search_cmd->add_option("--universe", universe, "Integer universe lo..hi (exhaustive)");
  search_cmd->add_option("--range", range, "Integer range lo..hi (local)");
  search_cmd->add_option("--iters", iters, "Moves per restart (local)");
  search_cmd->add_option("--restarts", restarts, "Restarts (local)");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    set_max_workers(g.threads ? *g.threads : std::max(1U, std::thread::hardware_concurrency()));
    const Budget budget = resolve_budget(g);
    const auto format = parse_format(g.format);
    NamedSets sets = load_sets(g);
    Json doc;
    int code = 0;

    if (eval_cmd->parsed()) {
      SetExpr expr = parse_expr(expr_text);
      FiniteSet value = eval(expr, sets, budget);
      doc["expression"] = print_expr(expr);
      doc["cardinality"] = value.size();
      if (g.dump) {
        std::ofstream file(*g.dump);
        if (!file) throw Error(ErrorKind::IoError, "cannot write '" + *g.dump + "'");
        write_set_text(file, value);
      }
    } else if (verify_cmd->parsed()) {
      need_a(sets);
      for (const char* name : {"B", "C", "X", "Y", "Z"}) {
        if (!sets.count(name)) sets.emplace(name, sets.at("A"));
      }
      params.alpha = Rational::parse(alpha_text);
      params.f = preset == "square" ? ConvexPreset::Square : ConvexPreset::Reciprocal;
      Json rows = Json::array();
      for (BoundId id : suite_bounds(suite)) {
        try {
          auto r = is_exact(id) ? check_exact(id, sets, params, budget) : report_asymptotic(id, sets, params, budget);
          if (r.verdict == Verdict::Fail) code = 1;
          rows.push_back(report::to_json(r));
        } catch (const Error& e) {
          code = 1;
          err << bound_name(id) << ": " << e.what() << '\n';
          Json row;
          row["bound_id"] = std::string(bound_name(id));
          row["lhs"] = nullptr;
          row["rhs"] = nullptr;
          row["ratio"] = nullptr;
          row["verdict"] = "ERROR(" + std::string(to_string(e.kind())) + ")";
          row["input"] = digest(NamedSets{{"A", sets.at("A")}});
          rows.push_back(std::move(row));
        }
      }
      doc["rows"] = std::move(rows);
    } else if (trace_cmd->parsed()) {
      const FiniteSet& a = need_a(sets);
      if (trace_kind == "thm1") {
        doc = report::to_json(theorem1_trace(a, budget));
      } else if (trace_kind == "thm2-chain") {
        doc = report::to_json(theorem2_chain(a, k_max, budget));
      } else if (trace_kind == "kfold") {
        doc = report::to_json(kfold_difference_growth(a, k_max, budget));
      } else {
        ClusterOptions opts{.forced_M = forced_m, .all_clusters = all_clusters, .compute_target = with_target};
        doc = report::to_json(cluster_trace(a, Rational::parse(c_text), g.seed, budget, opts));
      }
    } else if (search_cmd->parsed()) {
      SetExpr expr = parse_expr(search_expr);
      SearchResult r;
      if (mode == "exhaustive") {
        auto [lo, hi] = parse_interval(universe);
        std::vector<Rational> values;
        // One past the size limit is enough for exhaustive_min to reject huge universes.
        for (std::int64_t v = lo; v <= hi && values.size() <= 25; ++v) values.emplace_back(v);
        r = exhaustive_min(expr, m, FiniteSet::from_values(std::move(values)), budget);
      } else {
        auto [lo, hi] = parse_interval(range);
        r = local_search_min(expr, m, lo, hi, iters, restarts, g.seed, budget);
      }
      doc = report::to_json(r);
      doc["expression"] = print_expr(expr);
    }
    report::render(doc, format, out);
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace expandlab::cli
