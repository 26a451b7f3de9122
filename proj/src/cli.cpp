#include "liecat/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "liecat/error.hpp"
#include "liecat/report.hpp"

namespace liecat {

using nlohmann::json;

namespace {

// Bad user input that survives flag parsing (malformed --sv, sizes that do
// not add up, ...).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::string field = "H";
  bool json = false;
  std::uint64_t seed = 1;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--field", c.field, "Scalar field: R, C or H")
      ->check(CLI::IsMember({"R", "C", "H", "r", "c", "h"}));
  sub->add_flag("--json", c.json, "Emit the JSON report");
  sub->add_option("--seed", c.seed, "Base random seed");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

// "t:m,t:m,..." with t exact when it is made of digits and '/'.
SingularData parse_sv(const std::string& text, int n, int n0, Field field) {
  SingularData sd;
  sd.field = field;
  sd.n0 = n0;
  if (!trim(text).empty()) {
    for (const auto& item : split(text, ',')) {
      const auto parts = split(trim(item), ':');
      if (parts.size() != 2) throw UsageError("--sv: expected t:m, got '" + item + "'");
      SvBlock b;
      try {
        b.t = Number::parse(trim(parts[0]));
        std::size_t used = 0;
        b.mult = std::stoi(trim(parts[1]), &used);
        if (used != trim(parts[1]).size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw UsageError("--sv: cannot parse '" + item + "'");
      }
      sd.blocks.push_back(b);
    }
  }
  std::stable_sort(sd.blocks.begin(), sd.blocks.end(), [](const SvBlock& a, const SvBlock& b) {
    if (a.t.is_exact() && b.t.is_exact()) return a.t.rational() < b.t.rational();
    return a.t.to_double() < b.t.to_double();
  });
  try {
    sd.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--sv: ") + e.what());
  }
  if (sd.n() != n) {
    throw UsageError("--n0 plus the multiplicities in --sv must equal --n (" + std::to_string(sd.n()) +
                     " != " + std::to_string(n) + ")");
  }
  return sd;
}

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Text rendering walks the same JSON payload that --json prints, so both
// modes carry identical numbers.
void render_text(const json& j, const std::string& prefix, std::ostream& out) {
  for (const auto& [key, v] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (v.is_object()) {
      render_text(v, name, out);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << name << ":\n";
      std::vector<std::string> cols;
      for (const auto& [ck, cv] : v.front().items()) cols.push_back(ck);
      out << " ";
      for (const auto& c : cols) out << " " << c;
      out << "\n";
      for (const auto& row : v) {
        out << " ";
        for (const auto& c : cols) out << " " << (row.contains(c) ? cell(row[c]) : "-");
        out << "\n";
      }
    } else {
      out << name << ": " << cell(v) << "\n";
    }
  }
}

int emit(const Report& rep, bool as_json, std::ostream& out) {
  if (as_json) {
    out << json(rep).dump(2) << "\n";
  } else {
    out << rep.command << " (version " << rep.version << ")\n";
    render_text(json{{"parameters", rep.parameters}}, "", out);
    render_text(rep.results, "", out);
    out << "pass: " << (rep.pass ? "true" : "false") << "\n";
  }
  return rep.pass ? kExitPass : kExitFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Height functions on O(n,R), U(n), Sp(n): critical levels and category bounds",
               "liecat"};
  app.require_subcommand(1);

  Common common;
  int n = 0, n0 = 0, n_max = 0, trials = 0, max_iters = 5000;
  std::string sv, cats, csv_path;
  double grad_tol = 1e-10, step = 0.5, tol = kOmegaTol;

  auto* levels = app.add_subcommand("levels", "Critical levels and the level-count bound");
  add_common(levels, common);
  levels->add_option("--n", n, "Matrix size")->required()->check(CLI::PositiveNumber);
  levels->add_option("--sv", sv, "Nonzero singular values as t:m,t:m,...")->required();
  levels->add_option("--n0", n0, "Multiplicity of the zero singular value")->check(CLI::NonNegativeNumber);
  levels->add_option("--csv", csv_path, "Also write the level table as CSV");

  auto* bound = app.add_subcommand("bound", "Sp(n) level bound vs the Grassmannian-sum bound");
  add_common(bound, common);
  bound->add_option("--n-max", n_max, "Largest n (2..16)")->required()->check(CLI::Range(2, 16));

  auto* hsbound = app.add_subcommand("hsbound", "Component-sum bound for h_I on Sp(n)");
  add_common(hsbound, common);
  hsbound->add_option("--n", n, "Matrix size")->required()->check(CLI::PositiveNumber);
  hsbound->add_option("--cats", cats, "Relative categories c0,c1,...,cn")->required();

  auto* flow = app.add_subcommand("flow", "Seeded gradient flows classified against the critical set");
  add_common(flow, common);
  flow->add_option("--n", n, "Matrix size")->required()->check(CLI::PositiveNumber);
  flow->add_option("--sv", sv, "Nonzero singular values as t:m,t:m,...")->required();
  flow->add_option("--n0", n0, "Multiplicity of the zero singular value")->check(CLI::NonNegativeNumber);
  flow->add_option("--trials", trials, "Number of flows")->required()->check(CLI::PositiveNumber);
  flow->add_option("--grad-tol", grad_tol, "Gradient-norm stopping threshold")->check(CLI::PositiveNumber);
  flow->add_option("--max-iters", max_iters, "Iteration cap per flow")->check(CLI::NonNegativeNumber);
  flow->add_option("--step", step, "Initial step size")->check(CLI::PositiveNumber);

  auto* cover = app.add_subcommand("cover", "Monte-Carlo check of the four-set covering of Sp(2)");
  add_common(cover, common);
  cover->add_option("--trials", trials, "Number of Haar samples")->required()->check(CLI::PositiveNumber);
  cover->add_option("--tol", tol, "Membership threshold on |det|")->check(CLI::PositiveNumber);

  auto* gradcheck_cmd = app.add_subcommand("gradcheck", "Finite-difference gradient and Hessian checks");
  add_common(gradcheck_cmd, common);
  gradcheck_cmd->add_option("--n", n, "Matrix size")->required()->check(CLI::PositiveNumber);
  gradcheck_cmd->add_option("--trials", trials, "Number of random cases")->required()->check(CLI::PositiveNumber);

  std::vector<std::string> argv_store{"liecat"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    const Field field = parse_field(common.field);
    Report rep;
    rep.parameters["field"] = to_string(field);
    rep.parameters["seed"] = common.seed;

    if (levels->parsed()) {
      rep.command = "levels";
      rep.parameters["n"] = n;
      rep.parameters["n0"] = n0;
      rep.parameters["sv"] = sv;
      const SingularData sd = parse_sv(sv, n, n0, field);
      const LevelTable table = level_table(sd);
      rep.results = level_table_json(sd, table);
      try {
        rep.results["bound"] = level_count_bound(sd);
        rep.results["bound_note"] = "cat G <= level_count - 1";
      } catch (const BoundHypothesisError& e) {
        rep.results["bound"] = nullptr;
        rep.results["bound_note"] = e.what();
      }
      if (!csv_path.empty()) {
        rep.parameters["csv"] = csv_path;
        std::ofstream f(csv_path);
        if (!f) throw UsageError("cannot write " + csv_path);
        f << level_table_csv(table);
      }
      rep.pass = true;
    } else if (bound->parsed()) {
      rep.command = "bound";
      rep.parameters["n_max"] = n_max;
      const std::map<int, int> known{{2, 3}, {3, 5}};
      json rows = json::array();
      bool ok = true;
      for (int k = 2; k <= n_max; ++k) {
        const int c = sp_category_bound(k);
        const int hs = conjectured_sp_bound(k);
        const SingularData sd = make_singular_data(Field::Quaternion, 0, {{1, k}});
        const auto conj = conjectured_grassmannian_cats(k);
        const int hs_sum = comps_bound(sd, conj);
        const auto it = known.find(k);
        ok = ok && hs_sum == hs && (it == known.end() || it->second <= c);
        rows.push_back({{"n", k},
                        {"level_bound", c},
                        {"hs_conjectural_bound", hs},
                        {"hs_component_sum", hs_sum},
                        {"known_cat", it == known.end() ? json(nullptr) : json(it->second)}});
      }
      rep.results = {{"rows", rows}};
      rep.pass = ok;
    } else if (hsbound->parsed()) {
      rep.command = "hsbound";
      rep.parameters["n"] = n;
      rep.parameters["cats"] = cats;
      std::vector<std::optional<int>> values;
      for (const auto& c : split(cats, ',')) {
        try {
          std::size_t used = 0;
          const int v = std::stoi(trim(c), &used);
          if (used != trim(c).size()) throw std::invalid_argument("trailing");
          values.emplace_back(v);
        } catch (const std::exception&) {
          throw UsageError("--cats: cannot parse '" + c + "'");
        }
      }
      const SingularData sd = make_singular_data(field, 0, {{1, n}});
      int b = 0;
      try {
        b = comps_bound(sd, values);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--cats: ") + e.what());
      }
      rep.results = {{"group", GroupSpec{field, static_cast<std::size_t>(n)}.name()},
                     {"component_count", sd.component_count()},
                     {"cats", cats},
                     {"bound", b}};
      if (field == Field::Quaternion) rep.results["hs_conjectural_bound"] = conjectured_sp_bound(n);
      rep.pass = true;
    } else if (flow->parsed()) {
      rep.command = "flow";
      rep.parameters["n"] = n;
      rep.parameters["n0"] = n0;
      rep.parameters["sv"] = sv;
      rep.parameters["trials"] = trials;
      rep.parameters["grad_tol"] = grad_tol;
      rep.parameters["max_iters"] = max_iters;
      rep.parameters["step"] = step;
      const SingularData sd = parse_sv(sv, n, n0, field);
      FlowConfig cfg;
      cfg.grad_tol = grad_tol;
      cfg.max_iters = max_iters;
      cfg.step = step;
      cfg.seed = common.seed;
      const ScopedWarningHandler quiet([](std::string_view) {});
      const StructureReport sr =
          verify_structure({field, static_cast<std::size_t>(n)}, sd, trials, cfg);
      rep.results = structure_report_json(sr);
      rep.pass = sr.pass();
    } else if (cover->parsed()) {
      rep.command = "cover";
      rep.parameters["field"] = "H";
      rep.parameters["trials"] = trials;
      rep.parameters["tol"] = tol;
      const CoverReport cr = sp2_cover_check(trials, common.seed, tol);
      rep.results = cover_report_json(cr);
      rep.pass = cr.pass();
    } else if (gradcheck_cmd->parsed()) {
      rep.command = "gradcheck";
      rep.parameters["n"] = n;
      rep.parameters["trials"] = trials;
      const GradCheckReport gr = gradcheck(field, static_cast<std::size_t>(n), trials, common.seed);
      rep.results = gradcheck_report_json(gr);
      rep.pass = gr.pass();
    }
    return emit(rep, common.json, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FieldError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace liecat
