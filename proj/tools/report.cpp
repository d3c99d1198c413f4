#include "report.hpp"

#include <ostream>
#include <utility>
#include <vector>

namespace expandlab::report {
namespace {

Json rationals(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v.to_string());
  return out;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

bool is_scalar_array(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v) {
    if (e.is_structured()) return false;
  }
  return true;
}

void flatten(const Json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (is_scalar_array(v)) {
    std::string joined;
    for (const auto& e : v) {
      if (!joined.empty()) joined += ' ';
      joined += scalar_text(e);
    }
    out.emplace_back(path, joined);
  } else if (v.is_object()) {
    for (const auto& [key, child] : v.items()) flatten(child, path.empty() ? key : path + "." + key, out);
  } else if (v.is_array()) {
    std::size_t i = 0;
    for (const auto& child : v) flatten(child, path + "." + std::to_string(i++), out);
  } else {
    out.emplace_back(path, scalar_text(v));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

Json to_json(const FiniteSet& s) {
  Json out = Json::array();
  for (const auto& v : s) out.push_back(v.to_string());
  return out;
}

Json to_json(const BoundReport& r) {
  Json j;
  j["bound_id"] = r.bound_id;
  j["lhs"] = r.lhs_cardinality;
  if (std::holds_alternative<Rational>(r.rhs_value)) {
    j["rhs"] = r.rhs_text();
  } else {
    j["rhs"] = std::get<double>(r.rhs_value);
  }
  j["ratio"] = r.ratio;
  j["verdict"] = std::string(to_string(r.verdict));
  j["input"] = r.inputs_digest;
  return j;
}

Json to_json(const GrowthChain& chain) {
  Json j;
  j["kind"] = std::string(to_string(chain.kind));
  Json steps = Json::array();
  Json pairs = Json::array();
  for (const auto& s : chain.steps) {
    Json step;
    step["index"] = s.index;
    step["cardinality"] = s.cardinality;
    step["exponent"] = optional_json(s.exponent);
    if (chain.kind == GrowthKind::Theorem2Chain && s.index > 0) {
      step["times_R"] = optional_json(s.times_r);
      step["times_R_minus_1"] = optional_json(s.times_r_minus_one);
      step["tie"] = s.tie;
    }
    if (!s.choice.empty()) step["choice"] = s.choice;
    steps.push_back(std::move(step));
    pairs.push_back(Json::array({s.index, s.cardinality}));
  }
  j["steps"] = std::move(steps);
  j["pairs"] = std::move(pairs);
  j["truncated"] = chain.truncated;
  j["truncation_reason"] = chain.truncation_reason;
  return j;
}

Json to_json(const Theorem1Trace& t) {
  Json j;
  j["DD"] = t.dd;
  j["DDD"] = t.ddd;
  j["DD_over_DD"] = t.dd_over_dd;
  j["R"] = t.r;
  j["RR"] = t.r_times_r;
  j["R_times_R_minus_1"] = t.r_times_r_minus_one;
  j["reflection_equal"] = t.reflection_equal;
  j["RR_subset_DD_over_DD"] = t.rr_inside_dd_over_dd;
  return j;
}

Json to_json(const ClusterTrace& t) {
  Json j;
  j["n"] = t.set_size;
  j["C"] = t.C.to_string();
  j["seed"] = t.seed;
  j["lines"] = t.line_count;
  j["total_mass"] = t.total_mass;
  j["base"] = t.selection.base.to_string();
  j["bucket"] = t.selection.bucket;
  j["bucket_count"] = t.selection.bucket_count;
  j["tau"] = t.selection.tau.to_string();
  j["S_tau"] = rationals(t.selection.S_tau);
  j["S_tau_size"] = t.selection.S_tau.size();
  j["S_tau_mass"] = t.selection.mass;
  j["tau_bound_holds"] = t.tau_bound_holds;
  j["alpha"] = rationals(t.alpha);
  j["chain_ordered"] = t.chain_ordered;
  j["basic_bound"] = t.basic_bound;
  j["M_formula"] = t.M_formula;
  j["M"] = t.M;
  j["M_forced"] = t.M_forced;
  j["degraded"] = t.degraded;
  j["degraded_reason"] = t.degraded_reason;
  j["B"] = t.B ? Json(t.B->to_string()) : Json(nullptr);
  if (t.lll) {
    j["lll"] = Json{{"n", t.lll->n}, {"d", t.lll->d}, {"p", t.lll->p.to_string()}};
  } else {
    j["lll"] = nullptr;
  }
  j["lll_feasible"] = optional_json(t.lll_is_feasible);
  std::optional<std::uint64_t> e_max;
  Json clusters = Json::array();
  for (const auto& c : t.clusters) {
    Json cj;
    cj["t"] = c.t;
    cj["T"] = rationals(c.T);
    cj["U"] = rationals(c.U);
    Json reps = Json::array();
    for (const auto& row : c.reps) reps.push_back(rationals(row));
    cj["reps"] = std::move(reps);
    cj["E_max"] = c.E_max;
    cj["E_sum"] = c.E_sum;
    cj["E_sum_unordered"] = c.E_sum_unordered;
    cj["r_Q"] = c.r_Q;
    cj["incex_bound"] = c.incex_bound;
    cj["witnessed"] = c.witnessed;
    clusters.push_back(std::move(cj));
    e_max = std::max(e_max.value_or(0), c.E_max);
  }
  j["E_max"] = optional_json(e_max);
  j["cluster_count"] = t.cluster_count;
  j["clusters"] = std::move(clusters);
  j["cluster_bound"] = t.cluster_bound.to_string();
  j["final_bound"] = t.final_bound.to_string();
  j["target"] = optional_json(t.target);
  return j;
}

Json to_json(const SearchResult& r) {
  Json j;
  j["method"] = std::string(to_string(r.method));
  j["best_set"] = to_json(r.best_set);
  j["objective"] = r.objective;
  j["evaluations"] = r.evaluations;
  j["seed"] = optional_json(r.seed);
  if (r.method == SearchMethod::Local) {
    j["best_restart"] = r.best_restart;
    Json restarts = Json::array();
    for (const auto& log : r.restarts) {
      restarts.push_back(Json{{"start_objective", log.start_objective},
                              {"final_objective", log.final_objective},
                              {"accepted_steps", log.accepted.size()}});
    }
    j["restarts"] = std::move(restarts);
  }
  return j;
}

Json to_json(const FamilySpec& f) { return to_string(f); }

void render(const Json& doc, Format format, std::ostream& out) {
  if (format == Format::Json) {
    out << doc.dump(2) << '\n';
    return;
  }
  if (format == Format::Csv && doc.contains("rows") && doc["rows"].is_array()) {
    for (std::size_t i = 0; i < std::size(kCsvColumns); ++i) out << (i ? "," : "") << kCsvColumns[i];
    out << '\n';
    for (const auto& row : doc["rows"]) {
      for (std::size_t i = 0; i < std::size(kCsvColumns); ++i) {
        std::string key(kCsvColumns[i]);
        out << (i ? "," : "") << csv_field(row.contains(key) ? scalar_text(row[key]) : "");
      }
      out << '\n';
    }
    return;
  }
  std::vector<std::pair<std::string, std::string>> fields;
  flatten(doc, "", fields);
  if (format == Format::Csv) {
    out << "key,value\n";
    for (const auto& [k, v] : fields) out << csv_field(k) << ',' << csv_field(v) << '\n';
  } else {
    for (const auto& [k, v] : fields) out << k << ": " << v << '\n';
  }
}

}  // namespace expandlab::report
