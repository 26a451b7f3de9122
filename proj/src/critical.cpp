#include "liecat/critical.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include "liecat/error.hpp"
#include "liecat/group.hpp"

namespace liecat {

namespace {

bool is_rational_text(const std::string& s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  bool digits = false, slash = false, after_slash = false;
  for (; i < s.size(); ++i) {
    const unsigned char c = s[i];
    if (std::isdigit(c)) {
      digits = true;
      if (slash) after_slash = true;
    } else if (c == '/' && !slash && digits) {
      slash = true;
    } else {
      return false;
    }
  }
  return digits && (!slash || after_slash);
}

bool less_than(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() < b.rational();
  return a.to_double() < b.to_double();
}

void check_indices(const SingularData& sd, std::span<const int> indices) {
  if (indices.size() != sd.blocks.size()) {
    throw std::out_of_range("index vector has " + std::to_string(indices.size()) +
                            " entries, expected " + std::to_string(sd.blocks.size()));
  }
  for (std::size_t q = 0; q < indices.size(); ++q) {
    if (indices[q] < 0 || indices[q] > sd.blocks[q].mult) {
      throw std::out_of_range("index i_" + std::to_string(q + 1) + " = " +
                              std::to_string(indices[q]) + " outside [0, " +
                              std::to_string(sd.blocks[q].mult) + "]");
    }
  }
}

}  // namespace

Number Number::exact(Rational r) {
  Number n;
  n.approx_ = static_cast<double>(r);
  n.exact_ = std::move(r);
  return n;
}

Number Number::real(double d) {
  Number n;
  n.approx_ = d;
  return n;
}

Number Number::parse(const std::string& text) {
  if (is_rational_text(text)) {
    const auto slash = text.find('/');
    Rational r;
    if (slash == std::string::npos) {
      r = Rational(boost::multiprecision::cpp_int(text));
    } else {
      boost::multiprecision::cpp_int num(text.substr(0, slash));
      boost::multiprecision::cpp_int den(text.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
      r = Rational(num, den);
    }
    return exact(r);
  }
  std::size_t used = 0;
  double d = 0;
  try {
    d = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(d)) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return real(d);
}

std::string Number::str() const {
  if (exact_) return exact_->str();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", approx_);
  return buf;
}

Number operator+(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return Number::exact(a.rational() + b.rational());
  return Number::real(a.to_double() + b.to_double());
}

Number operator*(const Number& a, long long k) {
  if (a.is_exact()) return Number::exact(a.rational() * k);
  return Number::real(a.to_double() * static_cast<double>(k));
}

Number operator-(const Number& a) { return a * -1; }

void SingularData::validate() const {
  if (n0 < 0) throw std::invalid_argument("n0 must be nonnegative");
  for (std::size_t q = 0; q < blocks.size(); ++q) {
    if (blocks[q].mult < 1) throw std::invalid_argument("multiplicities must be positive");
    if (!less_than(Number::exact(0), blocks[q].t)) {
      throw std::invalid_argument("singular values t_q must be positive");
    }
    if (q > 0 && !less_than(blocks[q - 1].t, blocks[q].t)) {
      throw std::invalid_argument("singular values must be strictly increasing");
    }
  }
  if (n() < 1) throw std::invalid_argument("matrix size n0 + sum n_q must be positive");
}

int SingularData::n() const {
  int s = n0;
  for (const auto& b : blocks) s += b.mult;
  return s;
}

bool SingularData::all_exact() const {
  return std::all_of(blocks.begin(), blocks.end(), [](const SvBlock& b) { return b.t.is_exact(); });
}

bool SingularData::is_morse() const {
  return n0 == 0 &&
         std::all_of(blocks.begin(), blocks.end(), [](const SvBlock& b) { return b.mult == 1; });
}

std::size_t SingularData::component_count() const {
  std::size_t c = 1;
  for (const auto& b : blocks) c *= static_cast<std::size_t>(b.mult + 1);
  return c;
}

Matrix SingularData::diagonal_matrix() const {
  std::vector<double> d(static_cast<std::size_t>(n0), 0.0);
  for (const auto& b : blocks) d.insert(d.end(), static_cast<std::size_t>(b.mult), b.t.to_double());
  return Matrix::diagonal(field, d);
}

SingularData make_singular_data(Field field, int n0, std::vector<std::pair<long long, int>> blocks) {
  SingularData sd;
  sd.field = field;
  sd.n0 = n0;
  for (auto [t, m] : blocks) sd.blocks.push_back({Number::exact(Rational(t)), m});
  sd.validate();
  return sd;
}

SingularData singular_data(const Matrix& x, double cluster_tol) {
  if (!x.square()) throw DimensionError("singular_data: X must be square");
  SingularData sd;
  sd.field = x.field();
  const double xnorm = x.frobenius_norm();
  if (xnorm == 0) {
    sd.n0 = static_cast<int>(x.rows());
    return sd;
  }
  const SvdResult s = svd(x);
  const double thr = cluster_tol * xnorm;
  auto ambiguous = [&](double gap) { return gap >= 0.5 * thr && gap <= 2.0 * thr; };

  std::vector<std::vector<double>> clusters;
  for (double sigma : s.singular_values) {
    if (ambiguous(sigma)) {
      throw AmbiguityError("singular_data: singular value " + std::to_string(sigma) +
                           " is too close to the zero threshold; adjust cluster_tol");
    }
    if (sigma < thr) {
      ++sd.n0;
      continue;
    }
    if (!clusters.empty()) {
      const double gap = sigma - clusters.back().back();
      if (ambiguous(gap)) {
        throw AmbiguityError("singular_data: gap between singular values is too close to the "
                             "cluster threshold; adjust cluster_tol");
      }
      if (gap < thr) {
        clusters.back().push_back(sigma);
        continue;
      }
    }
    clusters.push_back({sigma});
  }
  for (const auto& c : clusters) {
    double mean = 0;
    for (double v : c) mean += v;
    mean /= static_cast<double>(c.size());
    sd.blocks.push_back({Number::real(mean), static_cast<int>(c.size())});
  }
  return sd;
}

Number critical_value(const SingularData& sd, std::span<const int> indices) {
  check_indices(sd, indices);
  Number v = sd.all_exact() ? Number::exact(0) : Number::real(0);
  for (std::size_t q = 0; q < indices.size(); ++q) {
    v = v + sd.blocks[q].t * (sd.blocks[q].mult - 2LL * indices[q]);
  }
  return v;
}

int component_dim(Field field, const SingularData& sd, std::span<const int> indices) {
  check_indices(sd, indices);
  int dim = static_cast<int>(group_dim(field, static_cast<std::size_t>(sd.n0)));
  for (std::size_t q = 0; q < indices.size(); ++q) {
    dim += real_dim(field) * indices[q] * (sd.blocks[q].mult - indices[q]);
  }
  return dim;
}

std::vector<CriticalComponent> enumerate_components(const SingularData& sd) {
  sd.validate();
  std::vector<CriticalComponent> out;
  out.reserve(sd.component_count());
  std::vector<int> idx(sd.blocks.size(), 0);
  for (;;) {
    out.push_back({idx, critical_value(sd, idx), component_dim(sd.field, sd, idx), std::nullopt});
    // Mixed-radix increment, last index fastest.
    std::size_t q = idx.size();
    while (q > 0) {
      --q;
      if (idx[q] < sd.blocks[q].mult) {
        ++idx[q];
        break;
      }
      idx[q] = 0;
      if (q == 0) return out;
    }
    if (idx.empty()) return out;
  }
}

LevelTable level_table(const SingularData& sd) {
  std::vector<CriticalComponent> comps = enumerate_components(sd);
  LevelTable table;

  if (sd.all_exact()) {
    std::map<Rational, std::vector<CriticalComponent>> grouped;
    for (auto& c : comps) grouped[c.value.rational()].push_back(std::move(c));
    for (auto& [v, cs] : grouped) table.levels.push_back({Number::exact(v), std::move(cs)});
    for (std::size_t a = 0, b = table.levels.size(); a < b; ++a) {
      if (table.levels[a].value.rational() != -table.levels[b - 1 - a].value.rational()) {
        throw std::logic_error("level_table: critical values are not symmetric under c -> -c");
      }
    }
  } else {
    std::stable_sort(comps.begin(), comps.end(), [](const auto& x, const auto& y) {
      return x.value.to_double() < y.value.to_double();
    });
    double vmax = 0;
    for (const auto& c : comps) vmax = std::max(vmax, std::abs(c.value.to_double()));
    const double tol = kLevelMergeTol * vmax;
    std::vector<std::vector<CriticalComponent>> groups;
    for (auto& c : comps) {
      if (!groups.empty()) {
        const double gap = c.value.to_double() - groups.back().back().value.to_double();
        if (gap > 0.1 * tol && gap < 10.0 * tol) {
          throw AmbiguityError("level_table: two critical values differ by " + std::to_string(gap) +
                               ", too close to the merge tolerance to decide");
        }
        if (gap <= 0.1 * tol) {
          groups.back().push_back(std::move(c));
          continue;
        }
      }
      groups.push_back({std::move(c)});
    }
    for (auto& g : groups) {
      double mean = 0;
      for (const auto& c : g) mean += c.value.to_double();
      mean /= static_cast<double>(g.size());
      table.levels.push_back({Number::real(mean), std::move(g)});
    }
    for (std::size_t a = 0, b = table.levels.size(); a < b; ++a) {
      const double s = table.levels[a].value.to_double() + table.levels[b - 1 - a].value.to_double();
      if (std::abs(s) > 10.0 * tol + 1e-300) {
        throw std::logic_error("level_table: critical values are not symmetric under c -> -c");
      }
    }
  }
  table.level_count = static_cast<int>(table.levels.size());
  return table;
}

int level_count_bound(const SingularData& sd) {
  if (!sd.is_morse()) {
    throw BoundHypothesisError(
        "level-count bound needs isolated critical points: n0 must be 0 and every singular "
        "value simple");
  }
  if (sd.field == Field::Real) {
    throw BoundHypothesisError("level-count bound needs a connected group; O(n,R) is not connected");
  }
  return level_table(sd).level_count - 1;
}

int sp_category_bound(int n) {
  if (n < 1) throw std::invalid_argument("sp_category_bound: n must be positive");
  std::vector<std::pair<long long, int>> blocks;
  for (int q = 1; q <= n; ++q) blocks.emplace_back(q, 1);
  const SingularData sd = make_singular_data(Field::Quaternion, 0, blocks);
  const LevelTable table = level_table(sd);
  const long long c = triangular(n);
  if (table.level_count != c + 1) {
    throw std::logic_error("sp_category_bound: expected C + 1 critical levels");
  }
  for (int j = 0; j < table.level_count; ++j) {
    if (table.levels[j].value.rational() != Rational(-c + 2LL * j)) {
      throw std::logic_error("sp_category_bound: critical values are not the parity class of C");
    }
  }
  const int bound = level_count_bound(sd);
  if (bound != c) throw std::logic_error("sp_category_bound: level bound differs from C");
  return bound;
}

int comps_bound(const SingularData& sd, std::span<const std::optional<int>> cats) {
  std::vector<CriticalComponent> comps = enumerate_components(sd);
  if (cats.size() != comps.size()) {
    throw std::invalid_argument("comps_bound: " + std::to_string(comps.size()) +
                                " components but " + std::to_string(cats.size()) +
                                " category annotations");
  }
  for (std::size_t c = 0; c < comps.size(); ++c) comps[c].user_cat = cats[c];
  return comps_bound(comps);
}

int comps_bound(std::span<const CriticalComponent> annotated) {
  if (annotated.empty()) throw std::invalid_argument("comps_bound: no components");
  int total = 0;
  for (const auto& c : annotated) {
    if (!c.user_cat) throw std::invalid_argument("comps_bound: component without category annotation");
    if (*c.user_cat < 0) throw std::invalid_argument("comps_bound: negative category annotation");
    total += *c.user_cat + 1;
  }
  return total - 1;
}

std::vector<std::optional<int>> conjectured_grassmannian_cats(int n) {
  std::vector<std::optional<int>> cats;
  for (int q = 0; q <= n; ++q) cats.emplace_back(std::min(q, n - q));
  return cats;
}

int conjectured_sp_bound(int n) { return (n + 2) * (n + 2) / 4 - 1; }

}  // namespace liecat
