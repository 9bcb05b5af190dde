#include "nuds/scenarios.hpp"

#include <cmath>
#include <random>

#include "nuds/error.hpp"
#include "nuds/recovery.hpp"

namespace nuds {

namespace {

constexpr std::uint64_t kScenarioSeed = 20240611ULL;

struct NamedId {
  ScenarioId id;
  const char* name;
};

constexpr NamedId kNames[] = {
    {ScenarioId::DiagonalFinite, "thm312_diagonal"},
    {ScenarioId::OnbLimit, "thm38_onb"},
    {ScenarioId::VandermondeCounterexample, "thm314_counterexample"},
    {ScenarioId::GeneralizedCorrected, "thm317_generalized"},
    {ScenarioId::QuarterContraction, "thm319_quarter"},
};

Vec basis_vector(Eigen::Index dim, Eigen::Index k) {
  Vec e = Vec::Zero(dim);
  e[k] = 1.0;
  return e;
}

Vec seeded_real_vector(Eigen::Index dim, std::uint64_t salt) {
  std::mt19937_64 rng(kScenarioSeed ^ salt);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = Complex(u(rng), 0.0);
  return v;
}

Mat columns_at(Eigen::Index dim, const std::vector<Eigen::Index>& positions) {
  Mat b = Mat::Zero(dim, static_cast<Eigen::Index>(positions.size()));
  for (std::size_t c = 0; c < positions.size(); ++c) b(positions[c], static_cast<Eigen::Index>(c)) = 1.0;
  return b;
}

SystemSpec base_spec(const SpectralParams& params, std::int64_t K) {
  SystemSpec s;
  s.params = params;
  s.K = K;
  s.dim = 4 * K;
  s.g = VectorFamily::standard_basis(s.dim);
  s.W_basis = Mat::Identity(s.dim, s.dim);
  return s;
}

Scenario diagonal_finite(const SpectralParams& params, std::int64_t K) {
  const IndexMap map(4 * K);
  Scenario sc;
  sc.id = ScenarioId::DiagonalFinite;
  sc.spec = base_spec(params, K);
  const Eigen::Index d = sc.spec.dim;
  Vec diag(d);
  for (const LambdaIndex idx : map.indices()) {
    double value = 0.0;
    if (idx.eps == 0) {
      // j = 2m: 2^{-j/2} on 2Z^+ and 0, 2^{j/2} on 2Z^-
      value = idx.m >= 0 ? std::pow(2.0, -static_cast<double>(idx.m))
                         : std::pow(2.0, static_cast<double>(idx.m));
    }
    diag[map.index_of(idx)] = value;
  }
  sc.spec.A = diag.asDiagonal();
  sc.spec.x0 = basis_vector(d, map.index_of({0, 1}));
  sc.spec.xm2 = basis_vector(d, map.index_of({-1, 0}));
  sc.spec.w = seeded_real_vector(d, 312);
  sc.expect.should_recover_finite = true;
  sc.expect.should_recover_infinite = false;
  sc.expect.expected_bounds = FrameBounds{1.0, 1.0};
  sc.expect.expected_rho = 1.0;
  sc.expect.notes = {
      "diagonal operator truncated to window(K); finite operator is bounded",
      "rho(A) = 1 at coordinate 0, so the infinite-sample route does not apply"};
  return sc;
}

Scenario onb_limit(const SpectralParams& params, std::int64_t K) {
  const IndexMap map(4 * K);
  Scenario sc;
  sc.id = ScenarioId::OnbLimit;
  sc.spec = base_spec(params, K);
  const Eigen::Index d = sc.spec.dim;
  sc.spec.A = Mat::Zero(d, d);
  // Every state equals w, so every data row is the fixed vector e_0.
  sc.spec.w = basis_vector(d, map.index_of({0, 0}));
  sc.spec.x0 = sc.spec.w;
  sc.spec.xm2 = sc.spec.w;
  sc.expect.should_recover_finite = true;
  sc.expect.should_recover_infinite = true;
  sc.expect.expected_bounds = FrameBounds{1.0, 1.0};
  sc.expect.expected_rho = 0.0;
  sc.expect.expected_norm_ratio = 1.0;
  sc.expect.notes = {"constant rows equal to e_0; limit operator norm ratio is 1"};
  return sc;
}

Scenario vandermonde_counterexample(const SpectralParams& params, std::int64_t K) {
  Scenario sc;
  sc.id = ScenarioId::VandermondeCounterexample;
  sc.spec = base_spec(params, K);
  const Eigen::Index d = sc.spec.dim;
  sc.spec.A = log_spaced(d, 0.1, 0.9).asDiagonal();
  sc.spec.w = counterexample_source(K);
  sc.spec.W_basis = sc.spec.w / sc.spec.w.norm();
  const Nullifier nul = counterexample_nullifier(sc.spec.A, sc.spec.w, K, params);
  sc.spec.g = VectorFamily({nul.g});
  sc.spec.x0 = nul.x0;
  sc.spec.xm2 = nul.xm2;
  sc.expect.should_recover_finite = false;
  // The initial states are tailored to hide the source inside the window, so
  // the window's edge rows are zero as well.
  sc.expect.should_recover_infinite = false;
  const double n2 = sc.spec.w.squaredNorm();
  sc.expect.expected_bounds = FrameBounds{n2, n2};
  sc.expect.notes = {
      "source follows the printed pattern extended to window(K)",
      "all window samples vanish although the subspace condition holds (necessary-only)"};
  return sc;
}

Scenario generalized_corrected(const SpectralParams& params, std::int64_t K) {
  const IndexMap map(4 * K);
  Scenario sc;
  sc.id = ScenarioId::GeneralizedCorrected;
  sc.spec = base_spec(params, K);
  const Eigen::Index d = sc.spec.dim;
  const Eigen::Index p0 = map.index_of({0, 0});
  const Eigen::Index pm2 = map.index_of({-1, 0});
  std::vector<Eigen::Index> in_w;
  Vec diag(d);
  for (Eigen::Index p = 0; p < d; ++p) {
    const bool outside = p == p0 || p == pm2;
    diag[p] = outside ? 1.0 : 2.0;
    if (!outside) in_w.push_back(p);
  }
  sc.spec.A = diag.asDiagonal();
  sc.spec.W_basis = columns_at(d, in_w);
  Vec w = seeded_real_vector(d, 317);
  w[p0] = 0.0;
  w[pm2] = 0.0;
  sc.spec.w = w;
  sc.spec.x0 = -w;
  sc.spec.xm2 = -w;
  sc.stationary = Mat(-sc.spec.W_basis);
  sc.expect.should_recover_finite = true;
  sc.expect.should_recover_infinite = true;
  sc.expect.expected_bounds = FrameBounds{1.0, 1.0};
  sc.expect.expected_rho = 2.0;
  sc.expect.notes = {"paper-typo-corrected",
                     "A = 2I on W and identity on e_0, e_-2; S(w) = -w"};
  return sc;
}

Scenario quarter_contraction(const SpectralParams& params, std::int64_t K) {
  const IndexMap map(4 * K);
  Scenario sc;
  sc.id = ScenarioId::QuarterContraction;
  sc.spec = base_spec(params, K);
  const Eigen::Index d = sc.spec.dim;
  sc.spec.A = 0.25 * Mat::Identity(d, d);
  const Eigen::Index p0 = map.index_of({0, 0});
  const Eigen::Index p1 = map.index_of({0, 1});
  sc.spec.W_basis = columns_at(d, {p0, p1});
  const Vec raw = seeded_real_vector(d, 319);
  Vec w = Vec::Zero(d);
  w[p0] = raw[p0];
  w[p1] = raw[p1];
  sc.spec.w = w;
  sc.spec.x0 = (4.0 / 3.0) * w;
  sc.spec.xm2 = (4.0 / 3.0) * w;
  sc.expect.should_recover_finite = true;
  sc.expect.should_recover_infinite = true;
  sc.expect.expected_bounds = FrameBounds{16.0 / 9.0, 16.0 / 9.0};
  sc.expect.expected_rho = 0.25;
  sc.expect.notes = {"stationary start x0 = x_-2 = (4/3) w"};
  return sc;
}

}  // namespace

std::string to_string(ScenarioId id) {
  for (const auto& n : kNames) {
    if (n.id == id) return n.name;
  }
  return "unknown";
}

std::optional<ScenarioId> parse_scenario_id(const std::string& name) {
  for (const auto& n : kNames) {
    if (name == n.name) return n.id;
  }
  return std::nullopt;
}

const std::vector<ScenarioId>& all_scenarios() {
  static const std::vector<ScenarioId> ids = [] {
    std::vector<ScenarioId> out;
    for (const auto& n : kNames) out.push_back(n.id);
    return out;
  }();
  return ids;
}

Vec log_spaced(Eigen::Index count, double lo, double hi) {
  Vec out(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (Eigen::Index i = 0; i < count; ++i) {
    const double t = static_cast<double>(i + 1) / static_cast<double>(count + 1);
    out[i] = std::exp(a + t * (b - a));
  }
  return out;
}

Vec counterexample_source(std::int64_t K) {
  const IndexMap map(4 * K);
  Vec w(map.dim());
  for (const LambdaIndex idx : map.indices()) {
    const double m = static_cast<double>(idx.m);
    double value = 0.0;
    if (idx.eps == 0) {
      value = idx.m == 0 ? 1.0 : (idx.m > 0 ? std::pow(2.0, -m) : -std::pow(2.0, m));
    } else {
      value = idx.m >= 0 ? std::pow(3.0, -(m + 1.0)) : -std::pow(3.0, m);
    }
    w[map.index_of(idx)] = value;
  }
  return w;
}

Scenario build(ScenarioId id, const SpectralParams& params, std::int64_t K) {
  if (K < 1) throw ConfigError("K must be >= 1");
  Scenario sc;
  switch (id) {
    case ScenarioId::DiagonalFinite:
      sc = diagonal_finite(params, K);
      break;
    case ScenarioId::OnbLimit:
      sc = onb_limit(params, K);
      break;
    case ScenarioId::VandermondeCounterexample:
      sc = vandermonde_counterexample(params, K);
      break;
    case ScenarioId::GeneralizedCorrected:
      sc = generalized_corrected(params, K);
      break;
    case ScenarioId::QuarterContraction:
      sc = quarter_contraction(params, K);
      break;
  }
  sc.spec.validate();
  return sc;
}

}  // namespace nuds
