#include "nuds/frames.hpp"

#include <algorithm>
#include <random>

#include <nlohmann/json.hpp>

#include "nuds/error.hpp"

namespace nuds {

VectorFamily::VectorFamily(std::vector<Vec> vectors, std::vector<LambdaIndex> labels)
    : vectors_(std::move(vectors)), labels_(std::move(labels)) {
  if (vectors_.empty()) throw ConfigError("a vector family needs at least one vector");
  const Eigen::Index d = vectors_.front().size();
  for (const auto& v : vectors_) {
    if (v.size() != d) throw DimensionError("vector family members have different lengths");
    require_finite(v, "family vector");
  }
  if (!labels_.empty() && labels_.size() != vectors_.size()) {
    throw DimensionError("family labels do not match the number of vectors");
  }
}

VectorFamily VectorFamily::from_columns(const Mat& columns) {
  std::vector<Vec> vs;
  vs.reserve(static_cast<std::size_t>(columns.cols()));
  for (Eigen::Index k = 0; k < columns.cols(); ++k) vs.emplace_back(columns.col(k));
  return VectorFamily(std::move(vs));
}

VectorFamily VectorFamily::standard_basis(Eigen::Index dim) {
  return from_columns(Mat::Identity(dim, dim));
}

Mat VectorFamily::as_columns() const {
  Mat out(dim(), static_cast<Eigen::Index>(size()));
  for (std::size_t k = 0; k < size(); ++k) out.col(static_cast<Eigen::Index>(k)) = vectors_[k];
  return out;
}

Mat frame_operator(const VectorFamily& f) {
  const Mat cols = f.as_columns();
  return cols * cols.adjoint();
}

FrameBounds frame_bounds(const VectorFamily& f, const Tolerances& tol) {
  const RealVec eigs = hermitian_eigs(frame_operator(f), tol);
  // Theta is positive semidefinite; clip round-off below zero.
  return FrameBounds{std::max(0.0, eigs[0]), std::max(0.0, eigs[eigs.size() - 1])};
}

DualFamily canonical_dual(const VectorFamily& f, const Tolerances& tol) {
  const FrameBounds b = frame_bounds(f, tol);
  if (!b.is_frame(tol.frame)) throw NotAFrameError("family is not a frame", b.alpha);
  const Mat duals = solve(frame_operator(f), f.as_columns(), tol);
  DualFamily out;
  out.vectors.reserve(f.size());
  for (Eigen::Index k = 0; k < duals.cols(); ++k) out.vectors.emplace_back(duals.col(k));
  return out;
}

Vec analysis(const Vec& f, const std::vector<Vec>& family) {
  Vec c(static_cast<Eigen::Index>(family.size()));
  for (std::size_t k = 0; k < family.size(); ++k) {
    c[static_cast<Eigen::Index>(k)] = inner(f, family[k]);
  }
  return c;
}

Vec analysis(const Vec& f, const VectorFamily& family) { return analysis(f, family.vectors()); }

Vec synthesis(const Vec& c, const std::vector<Vec>& family) {
  if (static_cast<std::size_t>(c.size()) != family.size()) {
    throw DimensionError("synthesis: " + std::to_string(c.size()) + " coefficients for " +
                         std::to_string(family.size()) + " vectors");
  }
  if (family.empty()) return Vec{};
  Vec out = Vec::Zero(family.front().size());
  for (std::size_t k = 0; k < family.size(); ++k) out += c[static_cast<Eigen::Index>(k)] * family[k];
  return out;
}

Vec synthesis(const Vec& c, const VectorFamily& family) { return synthesis(c, family.vectors()); }

double verify_dual_pair(const VectorFamily& f, const DualFamily& g, int trials,
                        std::uint64_t seed) {
  if (g.size() != f.size()) throw DimensionError("dual family is not aligned with its source");
  for (const auto& v : g.vectors) {
    if (v.size() != f.dim()) throw DimensionError("dual family vectors have the wrong length");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Vec x(f.dim());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = Complex(normal(rng), normal(rng));
    x.normalize();
    const Vec rebuilt = synthesis(analysis(x, g.vectors), f);
    worst = std::max(worst, (x - rebuilt).norm());
  }
  return worst;
}

double min_norm_gap(const Vec& f, const VectorFamily& family, const Vec& c,
                    const Tolerances& tol) {
  const Vec rebuilt = synthesis(c, family);
  if ((rebuilt - f).norm() > 1e-8 * std::max(1.0, f.norm())) {
    throw ConfigError("coefficients do not represent the vector");
  }
  const DualFamily dual = canonical_dual(family, tol);
  const Vec canonical = analysis(f, dual.vectors);
  return c.squaredNorm() - canonical.squaredNorm();
}

FrameBounds subspace_frame_bounds(const VectorFamily& f, const Mat& w_basis,
                                  const Tolerances& tol) {
  if (w_basis.rows() != f.dim()) throw DimensionError("subspace basis has the wrong length");
  const Mat coords = w_basis.adjoint() * f.as_columns();
  return frame_bounds(VectorFamily::from_columns(coords), tol);
}

namespace {

using nlohmann::json;

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Vec vec_from_json(const json& j, Eigen::Index expected) {
  if (!j.is_array()) throw ConfigError("vector must be a JSON array of [re, im] pairs");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& e = j[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ConfigError("complex entries must be [re, im] pairs");
    }
    v[static_cast<Eigen::Index>(i)] = Complex(e[0].get<double>(), e[1].get<double>());
  }
  if (expected >= 0 && v.size() != expected) {
    throw DimensionError("vector of length " + std::to_string(v.size()) + ", expected " +
                         std::to_string(expected));
  }
  return v;
}

}  // namespace

VectorFamily family_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("family JSON: ") + e.what());
  }
  if (!doc.contains("dim") || !doc.contains("vectors")) {
    throw ConfigError("family JSON needs \"dim\" and \"vectors\"");
  }
  const auto dim = doc.at("dim").get<Eigen::Index>();
  std::vector<Vec> vs;
  for (const auto& v : doc.at("vectors")) vs.push_back(vec_from_json(v, dim));
  return VectorFamily(std::move(vs));
}

std::string family_to_json(const VectorFamily& f) {
  json vectors = json::array();
  for (const auto& v : f.vectors()) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) entries.push_back(complex_to_json(v[i]));
    vectors.push_back(std::move(entries));
  }
  json doc{{"dim", f.dim()}, {"vectors", std::move(vectors)}};
  return doc.dump();
}

}  // namespace nuds
