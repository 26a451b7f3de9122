// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "liecat/cover.hpp"
#include "liecat/critical.hpp"
#include "liecat/flow.hpp"
#include "liecat/gradcheck.hpp"
#include "liecat/group.hpp"
#include "liecat/height.hpp"
#include "oracles.hpp"

using namespace liecat;

namespace {

constexpr Field kFields[] = {Field::Real, Field::Complex, Field::Quaternion};

struct Outcome {
  bool ok = false;
  std::string detail;
};

int g_failed = 0;

void criterion(int id, const char* title, double time_limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit_s > 0 && secs >= time_limit_s) {
    o.ok = false;
    o.detail += " (over time limit)";
  }
  if (!o.ok) ++g_failed;
  std::printf("[%s] %2d %-34s %7.3fs  %s\n", o.ok ? "PASS" : "FAIL", id, title, secs, o.detail.c_str());
  std::fflush(stdout);
}

SingularData ramp(int n) {
  std::vector<std::pair<long long, int>> blocks;
  for (int k = 1; k <= n; ++k) blocks.emplace_back(k, 1);
  return make_singular_data(Field::Quaternion, 0, blocks);
}

std::set<std::string> level_strings(const LevelTable& t) {
  std::set<std::string> out;
  for (const auto& l : t.levels) out.insert(l.value.is_exact() ? l.value.str() : "inexact");
  return out;
}

std::set<std::string> to_strings(const std::set<long long>& v) {
  std::set<std::string> out;
  for (long long x : v) out.insert(std::to_string(x));
  return out;
}

Matrix random_hermitian(Field f, std::size_t n, std::uint64_t seed) {
  const Matrix g = gaussian_matrix(f, n, seed);
  Matrix h = g + conj_transpose(g);
  return h * (1.0 / h.frobenius_norm());
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

int main() {
  const ScopedWarningHandler quiet([](std::string_view) {});

  criterion(1, "level count for diag(1..n)", 1.0, [] {
    for (int n = 1; n <= 10; ++n) {
      const SingularData sd = ramp(n);
      const LevelTable t = level_table(sd);
      const long long tri = triangular(n);
      std::vector<long long> d;
      for (int k = 1; k <= n; ++k) d.push_back(k);
      const auto brute = oracle::signed_sums(d);
      if (t.level_count != tri + 1 || level_count_bound(sd) != tri ||
          static_cast<long long>(brute.size()) != tri + 1 || level_strings(t) != to_strings(brute)) {
        return Outcome{false, "mismatch at n=" + std::to_string(n)};
      }
    }
    return Outcome{true, "n=1..10 match 2^n enumeration"};
  });

  criterion(2, "single parity class", 0, [] {
    for (int n = 1; n <= 10; ++n) {
      const long long c = triangular(n);
      std::set<long long> expect;
      for (long long v = -c; v <= c; v += 2) expect.insert(v);
      if (level_strings(level_table(ramp(n))) != to_strings(expect)) {
        return Outcome{false, "n=" + std::to_string(n)};
      }
    }
    return Outcome{true, "values = {-C, -C+2, ..., C}"};
  });

  criterion(3, "known category values", 0, [] {
    const int b2 = sp_category_bound(2), b3 = sp_category_bound(3);
    return Outcome{b2 == 3 && b3 == 6 && b3 >= 5,
                   "bound(2)=" + std::to_string(b2) + " bound(3)=" + std::to_string(b3)};
  });

  criterion(4, "component-sum closed form", 0, [] {
    for (int n = 2; n <= 10; ++n) {
      const auto cats = conjectured_grassmannian_cats(n);
      for (int q = 0; q <= n; ++q) {
        if (!cats[q] || *cats[q] != std::min(q, n - q)) return Outcome{false, "cats at n=" + std::to_string(n)};
      }
      const SingularData sd = make_singular_data(Field::Quaternion, 0, {{1, n}});
      if (comps_bound(sd, cats) != oracle::hs_closed_form(n)) return Outcome{false, "n=" + std::to_string(n)};
    }
    return Outcome{true, "n=2..10"};
  });

  criterion(5, "gradient finite differences", 0, [] {
    double err = 0, tan = 0;
    for (Field f : kFields) {
      for (std::size_t n = 1; n <= 4; ++n) {
        const GradCheckReport r = gradcheck(f, n, 5, 500 + n);
        err = std::max(err, r.max_grad_rel_error);
        tan = std::max(tan, r.max_tangency_residual);
      }
    }
    return Outcome{err < 1e-6 && tan < 1e-12, fmt("rel err %.2e", err) + fmt(" tangency %.2e", tan)};
  });

  criterion(6, "Hessian second differences", 0, [] {
    double err = 0, asym = 0;
    for (Field f : kFields) {
      const GradCheckReport r = gradcheck(f, 3, 10, 600);
      err = std::max(err, r.max_hessian_rel_error);
      asym = std::max(asym, r.max_hessian_asymmetry);
    }
    return Outcome{err < 1e-4 && asym < 1e-8, fmt("rel err %.2e", err) + fmt(" asymmetry %.2e", asym)};
  });

  criterion(7, "SVD conjugation identity", 0, [] {
    double worst = 0;
    for (Field f : kFields) {
      for (int k = 0; k < 20; ++k) {
        const std::size_t n = 1 + k % 4;
        const HeightSpec h(random_hermitian(f, n, 700 + k), {f, n});
        const Matrix a = haar_sample({f, n}, 800 + k);
        worst = std::max(worst, equivariance_residual(h, a));
      }
    }
    return Outcome{worst < 1e-10, fmt("max residual %.2e", worst)};
  });

  criterion(8, "critical-set structure on Sp(2)", 30.0, [] {
    const SingularData sd = make_singular_data(Field::Quaternion, 0, {{1, 1}, {2, 1}});
    FlowConfig cfg;
    cfg.seed = 2024;
    const StructureReport r = verify_structure({Field::Quaternion, 2}, sd, 200, cfg);
    std::set<long long> finals;
    bool on_levels = true;
    for (const auto& rec : r.records) {
      const long long v = std::llround(rec.final_value);
      on_levels = on_levels && std::abs(rec.final_value - v) < 1e-6 && oracle::signed_sums({1, 2}).count(v);
      finals.insert(v);
    }
    const bool ok = r.fraction_converged() == 1.0 && r.max_grad_norm < 1e-8 && on_levels &&
                    finals.size() == 4 && r.all_components_hit() && r.component_count == 4 &&
                    r.max_classification_residual < 1e-6 && r.pass();
    std::ostringstream os;
    os << r.converged << "/" << r.trials << " converged, " << r.component_hits.size() << "/"
       << r.component_count << " components, " << fmt("residual %.2e", r.max_classification_residual);
    return Outcome{ok, os.str()};
  });

  criterion(9, "Bott-Morse nullities", 0, [] {
    std::ostringstream os;
    bool ok = true;
    for (Field f : {Field::Complex, Field::Quaternion}) {
      const SingularData sd = make_singular_data(f, 0, {{1, 2}});
      FlowConfig cfg;
      cfg.seed = 99;
      const StructureReport r = verify_structure({f, 2}, sd, 40, cfg);
      const int middle = f == Field::Complex ? 2 : 4;
      std::set<int> seen;
      for (const auto& s : r.nullities) {
        const int expect = s.indices[0] == 1 ? middle : 0;
        ok = ok && s.nullity == expect;
        seen.insert(s.indices[0]);
        os << to_string(f) << "[" << s.indices[0] << "]:" << s.nullity << " ";
      }
      ok = ok && seen.size() == 3 && r.pass();
    }
    return Outcome{ok, os.str()};
  });

  criterion(10, "Sp(2) four-set covering", 60.0, [] {
    const CoverReport r = sp2_cover_check(100000, 31337);
    return Outcome{r.uncovered_count == 0 && r.min_margin > 1e-6,
                   std::to_string(r.uncovered_count) + " uncovered, " + fmt("min margin %.6e", r.min_margin)};
  });

  criterion(11, "U(2) orbit in Omega(i)", 0, [] {
    const OrbitReport r = orbit_in_omega_i(10000, 4242);
    return Outcome{r.all_members && r.min_margin > 0.5, fmt("min margin %.6f", r.min_margin)};
  });

  criterion(12, "linear-algebra backbone", 0, [] {
    double sv_err = 0, mult_err = 0, unit_err = 0;
    for (Field f : kFields) {
      for (int k = 0; k < 30; ++k) {
        const std::size_t n = 1 + k % 5;
        const Matrix x = gaussian_matrix(f, n, 1200 + k);
        const SvdResult s = svd(x);
        const auto ref = oracle::singular_values(x);
        for (std::size_t i = 0; i < n; ++i) sv_err = std::max(sv_err, std::abs(s.singular_values[i] - ref[i]));
        sv_err = std::max(sv_err, distance(s.u * s.d() * conj_transpose(s.v), x));
        const Matrix y = gaussian_matrix(f, n, 1300 + k);
        const double prod = abs_det(x) * abs_det(y);
        mult_err = std::max(mult_err, std::abs(abs_det(x * y) - prod) / prod);
      }
      for (int k = 0; k < 100; ++k) {
        const Matrix a = haar_sample({f, 1 + static_cast<std::size_t>(k % 4)}, 1400 + k);
        unit_err = std::max(unit_err, std::abs(abs_det(a) - 1.0));
      }
    }
    return Outcome{sv_err < 1e-10 && mult_err < 1e-10 && unit_err < 1e-10,
                   fmt("svd %.2e", sv_err) + fmt(" mult %.2e", mult_err) + fmt(" unit %.2e", unit_err)};
  });

  std::printf("%d criteria failed\n", g_failed);
  return g_failed;
}
