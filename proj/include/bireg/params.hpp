#pragma once

#include <cstdint>
#include <string>

#include "bireg/rational.hpp"

namespace bireg {

// Parameters of the model G(k, n, d): |Y| = n, |Z| = kn, out-degree kd on Y,
// in-degree d on Z. k is kept as a reduced fraction.
class GraphParams {
 public:
  std::int64_t k_num() const { return k_num_; }
  std::int64_t k_den() const { return k_den_; }
  std::int64_t n() const { return n_; }
  std::int64_t d() const { return d_; }
  std::int64_t kn() const { return kn_; }
  std::int64_t kd() const { return kd_; }
  Rational k() const { return Rational(k_num_, k_den_); }
  bool integer_k() const { return k_den_ == 1; }
  std::int64_t edge_count() const { return kd_ * n_; }

  // "p/q n=.. d=.." for messages.
  std::string describe() const;

  friend bool operator==(const GraphParams&, const GraphParams&) = default;

 private:
  friend GraphParams validate_params(std::int64_t, std::int64_t, std::int64_t, std::int64_t);
  GraphParams() = default;

  std::int64_t k_num_ = 1;
  std::int64_t k_den_ = 1;
  std::int64_t n_ = 1;
  std::int64_t d_ = 1;
  std::int64_t kn_ = 1;
  std::int64_t kd_ = 1;
};

// Throws Error with NonIntegerKN, NonIntegerKD, DExceedsN or KdExceedsN.
GraphParams validate_params(std::int64_t k_num, std::int64_t k_den, std::int64_t n,
                            std::int64_t d);

// Parses "p/q" or "p" into a reduced (num, den) pair.
std::pair<std::int64_t, std::int64_t> parse_ratio(const std::string& text);

}  // namespace bireg
