#include "bireg/params.hpp"

#include <charconv>
#include <numeric>

#include "bireg/error.hpp"

namespace bireg {

std::string GraphParams::describe() const {
  return "k=" + std::to_string(k_num_) + "/" + std::to_string(k_den_) +
         " n=" + std::to_string(n_) + " d=" + std::to_string(d_);
}

GraphParams validate_params(std::int64_t k_num, std::int64_t k_den, std::int64_t n,
                            std::int64_t d) {
  if (k_num <= 0 || k_den <= 0 || n <= 0 || d <= 0) {
    throw Error(ErrorCode::InvalidArgument, "k, n and d must be positive");
  }
  const std::int64_t g = std::gcd(k_num, k_den);
  k_num /= g;
  k_den /= g;
  if ((n * k_num) % k_den != 0) {
    throw Error(ErrorCode::NonIntegerKN, "k*n = " + std::to_string(n * k_num) + "/" +
                                             std::to_string(k_den) + " is not an integer");
  }
  if ((d * k_num) % k_den != 0) {
    throw Error(ErrorCode::NonIntegerKD, "k*d = " + std::to_string(d * k_num) + "/" +
                                             std::to_string(k_den) + " is not an integer");
  }
  if (d > n) {
    throw Error(ErrorCode::DExceedsN,
                "d = " + std::to_string(d) + " exceeds n = " + std::to_string(n));
  }
  const std::int64_t kd = d * k_num / k_den;
  if (kd > n) {
    throw Error(ErrorCode::KdExceedsN,
                "k*d = " + std::to_string(kd) + " exceeds n = " + std::to_string(n));
  }
  GraphParams p;
  p.k_num_ = k_num;
  p.k_den_ = k_den;
  p.n_ = n;
  p.d_ = d;
  p.kn_ = n * k_num / k_den;
  p.kd_ = kd;
  return p;
}

std::pair<std::int64_t, std::int64_t> parse_ratio(const std::string& text) {
  auto parse_int = [&](std::string_view part) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
      throw Error(ErrorCode::InvalidArgument, "cannot parse ratio '" + text + "'");
    }
    return value;
  };
  const std::string_view view(text);
  const auto slash = view.find('/');
  std::int64_t num = 0;
  std::int64_t den = 1;
  if (slash == std::string_view::npos) {
    num = parse_int(view);
  } else {
    num = parse_int(view.substr(0, slash));
    den = parse_int(view.substr(slash + 1));
  }
  if (num <= 0 || den <= 0) {
    throw Error(ErrorCode::InvalidArgument, "ratio '" + text + "' must be positive");
  }
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

}  // namespace bireg
