#pragma once

// Exact arithmetic on the non-uniform index set
//
//   Lambda = {0, r/N} + 2Z,   N >= 1, r odd, gcd(r, N) = 1, 1 <= r <= 2N - 1.
//
// A point of Lambda is stored as a pair (m, eps) denoting 2m + eps * r/N.
// Since 0 < r/N < 2 the numeric order of Lambda coincides with the
// lexicographic order of (m, eps), so no floating point is ever involved in
// branch dispatch or comparisons.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace nuds {

class SpectralParams {
 public:
  // Throws ConfigError naming the violated invariant.
  SpectralParams(std::int64_t N, std::int64_t r);

  std::int64_t N() const { return N_; }
  std::int64_t r() const { return r_; }

  friend bool operator==(const SpectralParams&, const SpectralParams&) = default;

 private:
  std::int64_t N_;
  std::int64_t r_;
};

// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
};

std::string to_string(const Rational& q);

struct LambdaIndex {
  std::int64_t m = 0;
  int eps = 0;  // 0 or 1

  friend bool operator==(const LambdaIndex&, const LambdaIndex&) = default;
  friend auto operator<=>(const LambdaIndex&, const LambdaIndex&) = default;
};

// The three cases of the recurrence:
//   EvenAny   lambda in 2Z                    -> next = lambda + r/N
//   PosOffset lambda in 2Z^+ + r/N or r/N     -> next = lambda + 2 - r/N
//   NegOffset lambda in 2Z^- + r/N            -> next = lambda - 2 - r/N
enum class Branch { EvenAny, PosOffset, NegOffset };

Branch branch_of(LambdaIndex idx);

// "i", "ii", "iii" for EvenAny, PosOffset, NegOffset.
std::string case_tag(Branch b);

Rational index_value(LambdaIndex idx, const SpectralParams& params);

// "-2", "0", "-2+1/2", "1/2", "2+1/2" ...
std::string label(LambdaIndex idx, const SpectralParams& params);

// [2K] = {-2K, -2K+r/N, ..., -2, -2+r/N, 0, r/N, ..., 2K-2, 2K-2+r/N},
// increasing, length 4K. Throws ConfigError for K < 1.
std::vector<LambdaIndex> window(std::int64_t K);

bool in_window(LambdaIndex idx, std::int64_t K);

LambdaIndex successor(LambdaIndex idx);

// Exponent n with x_lambda = A^n x_init + (I + A + ... + A^{n-1}) w, where
// x_init is x_0 on the orbit of 0 (m >= 0) and x_{-2} on the orbit of -2.
std::int64_t power_of(LambdaIndex idx);

// Initial state of the orbit containing idx: (0,0) or (-1,0).
LambdaIndex orbit_start(LambdaIndex idx);

// Coordinate positions of a window: position p <-> p-th element of
// window(dim / 4). Only whole windows (dim divisible by 4) are accepted.
class IndexMap {
 public:
  explicit IndexMap(std::int64_t dim);

  std::int64_t dim() const { return static_cast<std::int64_t>(indices_.size()); }
  std::int64_t K() const { return dim() / 4; }

  LambdaIndex lambda_of(std::int64_t position) const;
  // Throws ConfigError when idx is outside the window.
  std::int64_t index_of(LambdaIndex idx) const;
  bool contains(LambdaIndex idx) const;

  const std::vector<LambdaIndex>& indices() const { return indices_; }

 private:
  std::vector<LambdaIndex> indices_;
};

}  // namespace nuds
