#pragma once

// JSON report schema shared by every CLI subcommand:
//   {command, parameters, results, pass, version}

#include "json.hpp"
#include <string>

#include "liecat/cover.hpp"
#include "liecat/critical.hpp"
#include "liecat/flow.hpp"
#include "liecat/gradcheck.hpp"

namespace liecat {

inline constexpr const char* kVersion = "0.1.0";

struct Report {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  bool pass = false;
  std::string version = kVersion;
};

void to_json(nlohmann::json& j, const Report& r);
/// Throws nlohmann::json::exception if a schema key is missing or mistyped.
void from_json(const nlohmann::json& j, Report& r);

nlohmann::json singular_data_json(const SingularData& sd);
nlohmann::json level_table_json(const SingularData& sd, const LevelTable& table);
nlohmann::json structure_report_json(const StructureReport& rep);
nlohmann::json cover_report_json(const CoverReport& rep);
nlohmann::json gradcheck_report_json(const GradCheckReport& rep);

/// One CSV row per component: value,component_indices,dim. Indices are
/// joined with ';'.
std::string level_table_csv(const LevelTable& table);

}  // namespace liecat
