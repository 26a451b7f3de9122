#include "liecat/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "liecat/error.hpp"

namespace liecat {

namespace {

std::string format_indices(const std::vector<int>& idx) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
  os << "]";
  return os.str();
}

// Block offsets/sizes in the order n0, n_1, ..., n_k.
std::vector<std::pair<std::size_t, std::size_t>> block_ranges(const SingularData& sd) {
  std::vector<std::pair<std::size_t, std::size_t>> r;
  std::size_t off = 0;
  r.emplace_back(off, static_cast<std::size_t>(sd.n0));
  off += static_cast<std::size_t>(sd.n0);
  for (const auto& b : sd.blocks) {
    r.emplace_back(off, static_cast<std::size_t>(b.mult));
    off += static_cast<std::size_t>(b.mult);
  }
  return r;
}

// Each diagonal slot is pinned to +-1 (probability 1/2) or free; the free
// slots carry a Haar point of the corresponding subgroup. Pinned slots have
// no off-diagonal coupling, which the flow preserves exactly.
Matrix stratified_start(const GroupSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  const std::size_t n = spec.n;
  std::vector<std::size_t> free_slots;
  Matrix a(spec.field, n, n);
  for (std::size_t s = 0; s < n; ++s) {
    if (coin(rng)) {
      a.set(s, s, Quat(coin(rng) ? 1.0 : -1.0));
    } else {
      free_slots.push_back(s);
    }
  }
  if (!free_slots.empty()) {
    const Matrix sub = haar_sample({spec.field, free_slots.size()}, rng());
    for (std::size_t r = 0; r < free_slots.size(); ++r)
      for (std::size_t c = 0; c < free_slots.size(); ++c) a.set(free_slots[r], free_slots[c], sub(r, c));
  }
  return a;
}

}  // namespace

void FlowConfig::validate() const {
  if (!(step > 0)) throw std::invalid_argument("FlowConfig: step must be positive");
  if (!(armijo_c > 0 && armijo_c < 1)) throw std::invalid_argument("FlowConfig: armijo_c must be in (0,1)");
  if (!(grad_tol > 0)) throw std::invalid_argument("FlowConfig: grad_tol must be positive");
  if (max_iters < 0) throw std::invalid_argument("FlowConfig: max_iters must be nonnegative");
}

FlowResult run(const HeightSpec& h, const Matrix& a0, const FlowConfig& cfg) {
  cfg.validate();
  require_member(a0, "flow::run");
  const double sign = cfg.direction == Direction::Ascend ? 1.0 : -1.0;
  const double xnorm = h.x().frobenius_norm();

  FlowResult out;
  Matrix a = a0;
  double f = value(h, a);
  Matrix g = riem_grad(h, a);
  double gn = g.frobenius_norm();

  int it = 0;
  while (gn > cfg.grad_tol && it < cfg.max_iters) {
    // Evaluating h costs a few ulps; steps whose true gain is below that are
    // still accepted so the flow can reach small gradients.
    const double slack = 1e-14 * (1.0 + std::abs(f) + xnorm);
    double s = cfg.step;
    bool accepted = false;
    Matrix cand;
    double fc = 0;
    while (s >= cfg.step * 1e-12) {
      try {
        cand = retract(a, g * (sign * s));
      } catch (const ConvergenceError&) {
        s *= 0.5;
        continue;
      }
      fc = inner(h.x(), cand);
      if (sign * (fc - f) >= cfg.armijo_c * s * gn * gn - slack) {
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) break;
    if (sign * (fc - f) < -slack) out.monotone = false;
    a = std::move(cand);
    f = fc;
    g = riem_grad(h, a);
    gn = g.frobenius_norm();
    ++it;
  }

  out.final_point = std::move(a);
  out.final_value = f;
  out.final_grad_norm = gn;
  out.iterations = it;
  out.converged = gn <= cfg.grad_tol;
  return out;
}

Classification classify(const SingularData& sd, const Matrix& a, double tol) {
  sd.validate();
  require_member(a, "classify");
  if (a.rows() != static_cast<std::size_t>(sd.n()) || a.field() != sd.field) {
    throw DimensionError("classify: point does not match the singular data");
  }
  const auto ranges = block_ranges(sd);
  const std::size_t n = a.rows();
  std::vector<std::size_t> owner(n);
  for (std::size_t b = 0; b < ranges.size(); ++b)
    for (std::size_t s = 0; s < ranges[b].second; ++s) owner[ranges[b].first + s] = b;

  double off = 0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (owner[r] != owner[c]) off += a(r, c).norm2();

  Classification out;
  out.residual = std::sqrt(off);
  std::vector<Matrix> blocks;
  for (std::size_t b = 1; b < ranges.size(); ++b) {
    const auto [o, m] = ranges[b];
    Matrix blk = a.block(o, o, m, m);
    out.residual += (blk * blk - Matrix::identity(a.field(), m)).frobenius_norm();
    blocks.push_back(std::move(blk));
  }
  if (out.residual > tol) {
    std::ostringstream os;
    os << "classify: point is not on the critical set (block residual " << out.residual << ")";
    throw PreconditionError(os.str());
  }

  const int doubling = a.field() == Field::Quaternion ? 2 : 1;
  for (const Matrix& blk : blocks) {
    const Matrix herm = (blk + conj_transpose(blk)) * 0.5;
    const EigResult eig = hermitian_eig(complex_adjoint(herm), 1e-15);
    int minus = 0;
    for (double lam : eig.eigenvalues) {
      if (std::abs(lam + 1.0) <= tol) {
        ++minus;
      } else if (std::abs(lam - 1.0) > tol) {
        std::ostringstream os;
        os << "classify: block eigenvalue " << lam << " is not within " << tol << " of +-1";
        throw PreconditionError(os.str());
      }
    }
    if (minus % doubling != 0) throw PreconditionError("classify: unpaired quaternionic eigenvalue");
    out.indices.push_back(minus / doubling);
  }
  return out;
}

HessianSpectrum hessian_spectrum(const HeightSpec& h, const Matrix& a) {
  const double gn = riem_grad(h, a).frobenius_norm();
  if (!(gn < kCriticalGradTol)) {
    std::ostringstream os;
    os << "hessian_spectrum: gradient norm " << gn << " is not below " << kCriticalGradTol;
    throw PreconditionError(os.str());
  }
  HessianSpectrum out;
  out.eigenvalues = hessian_matrix(h, a).eigenvalues();
  double maxabs = 0;
  for (double e : out.eigenvalues) maxabs = std::max(maxabs, std::abs(e));
  const double null_tol = 1e-6 * maxabs;
  for (double e : out.eigenvalues) {
    if (e < -null_tol) {
      ++out.index;
    } else if (e > null_tol) {
      ++out.coindex;
    } else {
      ++out.nullity;
    }
  }
  return out;
}

Matrix constructed_critical_point(const SingularData& sd, std::span<const int> indices,
                                  std::uint64_t seed) {
  sd.validate();
  component_dim(sd.field, sd, indices);  // validates the index vector
  const std::size_t n = static_cast<std::size_t>(sd.n());
  Matrix a(sd.field, n, n);
  const auto ranges = block_ranges(sd);
  if (ranges[0].second > 0) a.set_block(0, 0, haar_sample({sd.field, ranges[0].second}, derive_seed(seed, 0)));
  for (std::size_t q = 0; q < sd.blocks.size(); ++q) {
    const auto [o, m] = ranges[q + 1];
    std::vector<double> signs(m, 1.0);
    for (int r = 0; r < indices[q]; ++r) signs[static_cast<std::size_t>(r)] = -1.0;
    const Matrix qm = haar_sample({sd.field, m}, derive_seed(seed, q + 1));
    a.set_block(o, o, qm * Matrix::diagonal(sd.field, signs) * conj_transpose(qm));
  }
  return a;
}

bool StructureReport::nullity_matches() const {
  return std::all_of(nullities.begin(), nullities.end(),
                     [](const NullitySample& s) { return s.nullity == s.component_dim; });
}

bool StructureReport::pass() const {
  return trials > 0 && converged == trials && counterexamples.empty() && nullity_matches() &&
         all_monotone;
}

StructureReport verify_structure(const GroupSpec& spec, const SingularData& sd, int trials,
                                 const FlowConfig& cfg) {
  sd.validate();
  cfg.validate();
  if (spec.n != static_cast<std::size_t>(sd.n()) || spec.field != sd.field) {
    throw DimensionError("verify_structure: singular data does not match the group");
  }
  if (trials < 0) throw std::invalid_argument("verify_structure: trials must be nonnegative");

  const HeightSpec h(sd.diagonal_matrix(), spec);
  StructureReport rep;
  rep.group = spec;
  rep.sd = sd;
  rep.trials = trials;
  rep.component_count = sd.component_count();
  constexpr int kNullitySamplesPerComponent = 2;
  std::map<std::vector<int>, int> sampled;

  for (int t = 0; t < trials; ++t) {
    TrialRecord rec;
    rec.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    rec.direction = (t % 2 == 0) ? Direction::Ascend : Direction::Descend;
    rec.start = (t % 4 < 2) ? StartKind::Haar : StartKind::Stratified;
    const Matrix a0 = rec.start == StartKind::Haar ? haar_sample(spec, rec.seed)
                                                   : stratified_start(spec, rec.seed);
    FlowConfig trial_cfg = cfg;
    trial_cfg.direction = rec.direction;
    trial_cfg.seed = rec.seed;
    const FlowResult res = run(h, a0, trial_cfg);
    rec.converged = res.converged;
    rec.iterations = res.iterations;
    rec.final_value = res.final_value;
    rec.final_grad_norm = res.final_grad_norm;
    rep.all_monotone = rep.all_monotone && res.monotone;
    rep.max_grad_norm = std::max(rep.max_grad_norm, res.final_grad_norm);

    if (res.converged) {
      ++rep.converged;
      if (res.iterations == 0) ++rep.start_on_critical;
      try {
        const Classification cls = classify(sd, res.final_point, kClassifyTol);
        rec.indices = cls.indices;
        rec.classification_residual = cls.residual;
        rec.value_error = std::abs(res.final_value - critical_value(sd, cls.indices).to_double());
        rep.max_classification_residual = std::max(rep.max_classification_residual, cls.residual);
        rep.max_value_error = std::max(rep.max_value_error, rec.value_error);
        ++rep.component_hits[cls.indices];
        if (rec.value_error > 1e-6) {
          rep.counterexamples.push_back("seed " + std::to_string(rec.seed) + ": value " +
                                        std::to_string(res.final_value) + " differs from component " +
                                        format_indices(cls.indices));
        }
        if (sampled[cls.indices] < kNullitySamplesPerComponent &&
            res.final_grad_norm < kCriticalGradTol) {
          ++sampled[cls.indices];
          const HessianSpectrum spc = hessian_spectrum(h, res.final_point);
          rep.nullities.push_back(
              {cls.indices, spc.nullity, spc.index, component_dim(sd.field, sd, cls.indices)});
        }
      } catch (const PreconditionError& e) {
        rep.counterexamples.push_back("seed " + std::to_string(rec.seed) + ": " + e.what());
      }
    }
    rep.records.push_back(std::move(rec));
  }
  std::sort(rep.records.begin(), rep.records.end(),
            [](const TrialRecord& x, const TrialRecord& y) { return x.seed < y.seed; });
  return rep;
}

}  // namespace liecat
