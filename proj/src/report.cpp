#include "liecat/report.hpp"

#include <sstream>

namespace liecat {

using nlohmann::json;

namespace {

json number_json(const Number& v) {
  return {{"value", v.to_double()}, {"exact", v.is_exact() ? json(v.str()) : json(nullptr)}};
}

const char* direction_name(Direction d) { return d == Direction::Ascend ? "ascend" : "descend"; }
const char* start_name(StartKind k) { return k == StartKind::Haar ? "haar" : "stratified"; }

}  // namespace

void to_json(json& j, const Report& r) {
  j = json{{"command", r.command},
           {"parameters", r.parameters},
           {"results", r.results},
           {"pass", r.pass},
           {"version", r.version}};
}

void from_json(const json& j, Report& r) {
  j.at("command").get_to(r.command);
  r.parameters = j.at("parameters");
  r.results = j.at("results");
  j.at("pass").get_to(r.pass);
  j.at("version").get_to(r.version);
}

json singular_data_json(const SingularData& sd) {
  json blocks = json::array();
  for (const auto& b : sd.blocks) {
    json jb = number_json(b.t);
    jb["mult"] = b.mult;
    blocks.push_back(jb);
  }
  return {{"field", to_string(sd.field)}, {"n", sd.n()}, {"n0", sd.n0}, {"blocks", blocks},
          {"morse", sd.is_morse()}};
}

json level_table_json(const SingularData& sd, const LevelTable& table) {
  json levels = json::array();
  std::size_t ncomp = 0;
  for (const auto& lvl : table.levels) {
    json comps = json::array();
    for (const auto& c : lvl.components) comps.push_back({{"indices", c.indices}, {"dim", c.dim}});
    ncomp += lvl.components.size();
    json jl = number_json(lvl.value);
    jl["components"] = comps;
    levels.push_back(jl);
  }
  return {{"singular_data", singular_data_json(sd)},
          {"level_count", table.level_count},
          {"component_count", ncomp},
          {"levels", levels}};
}

json structure_report_json(const StructureReport& rep) {
  json hits = json::array();
  for (const auto& [idx, count] : rep.component_hits) {
    hits.push_back({{"indices", idx}, {"hits", count},
                    {"value", critical_value(rep.sd, idx).to_double()},
                    {"dim", component_dim(rep.sd.field, rep.sd, idx)}});
  }
  json nulls = json::array();
  for (const auto& s : rep.nullities) {
    nulls.push_back({{"indices", s.indices}, {"nullity", s.nullity}, {"index", s.index},
                     {"component_dim", s.component_dim}});
  }
  json records = json::array();
  for (const auto& r : rep.records) {
    records.push_back({{"seed", r.seed},
                       {"start", start_name(r.start)},
                       {"direction", direction_name(r.direction)},
                       {"converged", r.converged},
                       {"iterations", r.iterations},
                       {"final_value", r.final_value},
                       {"final_grad_norm", r.final_grad_norm},
                       {"indices", r.indices ? json(*r.indices) : json(nullptr)},
                       {"classification_residual", r.classification_residual}});
  }
  return {{"group", rep.group.name()},
          {"singular_data", singular_data_json(rep.sd)},
          {"trials", rep.trials},
          {"converged", rep.converged},
          {"fraction_converged", rep.fraction_converged()},
          {"start_on_critical", rep.start_on_critical},
          {"component_count", rep.component_count},
          {"components_hit", hits},
          {"all_components_hit", rep.all_components_hit()},
          {"max_classification_residual", rep.max_classification_residual},
          {"max_value_error", rep.max_value_error},
          {"max_grad_norm", rep.max_grad_norm},
          {"all_monotone", rep.all_monotone},
          {"nullities", nulls},
          {"nullity_matches_dim", rep.nullity_matches()},
          {"counterexamples", rep.counterexamples},
          {"records", records}};
}

json cover_report_json(const CoverReport& rep) {
  return {{"group", "Sp(2)"},
          {"sets", {"I", "-I", "P", "-P"}},
          {"trials", rep.trials},
          {"seed", rep.seed},
          {"tol", rep.tol},
          {"uncovered_count", rep.uncovered_count},
          {"min_margin", rep.min_margin},
          {"per_set_hit_counts", rep.per_set_hit_counts}};
}

json gradcheck_report_json(const GradCheckReport& rep) {
  return {{"field", to_string(rep.field)},
          {"n", rep.n},
          {"trials", rep.trials},
          {"seed", rep.seed},
          {"max_grad_rel_error", rep.max_grad_rel_error},
          {"max_tangency_residual", rep.max_tangency_residual},
          {"max_hessian_rel_error", rep.max_hessian_rel_error},
          {"max_hessian_asymmetry", rep.max_hessian_asymmetry}};
}

std::string level_table_csv(const LevelTable& table) {
  std::ostringstream os;
  os << "value,component_indices,dim\n";
  for (const auto& lvl : table.levels) {
    for (const auto& c : lvl.components) {
      os << lvl.value.str() << ",";
      for (std::size_t i = 0; i < c.indices.size(); ++i) os << (i ? ";" : "") << c.indices[i];
      os << "," << c.dim << "\n";
    }
  }
  return os.str();
}

}  // namespace liecat
