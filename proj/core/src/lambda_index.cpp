#include "nuds/lambda_index.hpp"

#include <numeric>

#include "nuds/error.hpp"

namespace nuds {

SpectralParams::SpectralParams(std::int64_t N, std::int64_t r) : N_(N), r_(r) {
  if (N < 1) throw ConfigError("N must be a positive integer");
  if (r % 2 == 0) throw ConfigError("r must be odd");
  if (r < 1 || r > 2 * N - 1) throw ConfigError("r must satisfy 1 <= r <= 2N - 1");
  if (std::gcd(r, N) != 1) throw ConfigError("r must be coprime with N");
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ConfigError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  // Denominators are positive, so cross multiplication preserves order.
  return a.num * b.den <=> b.num * a.den;
}

std::string to_string(const Rational& q) {
  if (q.den == 1) return std::to_string(q.num);
  return std::to_string(q.num) + "/" + std::to_string(q.den);
}

Branch branch_of(LambdaIndex idx) {
  if (idx.eps == 0) return Branch::EvenAny;
  return idx.m >= 0 ? Branch::PosOffset : Branch::NegOffset;
}

std::string case_tag(Branch b) {
  switch (b) {
    case Branch::EvenAny:
      return "i";
    case Branch::PosOffset:
      return "ii";
    case Branch::NegOffset:
      return "iii";
  }
  return "?";
}

Rational index_value(LambdaIndex idx, const SpectralParams& params) {
  return Rational::make(2 * idx.m * params.N() + idx.eps * params.r(), params.N());
}

std::string label(LambdaIndex idx, const SpectralParams& params) {
  const std::string offset = to_string(Rational::make(params.r(), params.N()));
  if (idx.eps == 0) return std::to_string(2 * idx.m);
  if (idx.m == 0) return offset;
  return std::to_string(2 * idx.m) + "+" + offset;
}

std::vector<LambdaIndex> window(std::int64_t K) {
  if (K < 1) throw ConfigError("window parameter K must be >= 1");
  std::vector<LambdaIndex> out;
  out.reserve(static_cast<std::size_t>(4 * K));
  for (std::int64_t m = -K; m <= K - 1; ++m) {
    out.push_back({m, 0});
    out.push_back({m, 1});
  }
  return out;
}

bool in_window(LambdaIndex idx, std::int64_t K) {
  return idx.m >= -K && idx.m <= K - 1 && (idx.eps == 0 || idx.eps == 1);
}

LambdaIndex successor(LambdaIndex idx) {
  switch (branch_of(idx)) {
    case Branch::EvenAny:
      return {idx.m, 1};
    case Branch::PosOffset:
      return {idx.m + 1, 0};
    case Branch::NegOffset:
      return {idx.m - 1, 0};
  }
  return idx;
}

std::int64_t power_of(LambdaIndex idx) {
  if (idx.m >= 0) return 2 * idx.m + idx.eps;
  return -2 * idx.m - 2 + idx.eps;
}

LambdaIndex orbit_start(LambdaIndex idx) {
  return idx.m >= 0 ? LambdaIndex{0, 0} : LambdaIndex{-1, 0};
}

IndexMap::IndexMap(std::int64_t dim) {
  if (dim < 4 || dim % 4 != 0) {
    throw ConfigError("index map dimension must be a positive multiple of 4, got " +
                      std::to_string(dim));
  }
  indices_ = window(dim / 4);
}

LambdaIndex IndexMap::lambda_of(std::int64_t position) const {
  if (position < 0 || position >= dim()) {
    throw ConfigError("position " + std::to_string(position) + " outside index map");
  }
  return indices_[static_cast<std::size_t>(position)];
}

bool IndexMap::contains(LambdaIndex idx) const { return in_window(idx, K()); }

std::int64_t IndexMap::index_of(LambdaIndex idx) const {
  if (!contains(idx)) {
    throw ConfigError("index (" + std::to_string(idx.m) + "," + std::to_string(idx.eps) +
                      ") outside index map window");
  }
  return 2 * (idx.m + K()) + idx.eps;
}

}  // namespace nuds
