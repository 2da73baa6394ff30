#ifndef CCGEO_CALC_POINT_HPP
#define CCGEO_CALC_POINT_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ccgeo/support/rational.hpp"

namespace ccgeo::calc {

enum class ArithmeticMode { Exact, Float };

// Evaluation point carrying its arithmetic mode. Exact points can always be
// demoted to float; the reverse is not offered.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Rational> coords) : data_(std::move(coords)) {}
  explicit Point(std::vector<double> coords) : data_(std::move(coords)) {}

  static Point origin_exact(int n) { return Point(std::vector<Rational>(n, Rational(0))); }
  static Point origin_float(int n) { return Point(std::vector<double>(n, 0.0)); }

  ArithmeticMode mode() const {
    return std::holds_alternative<std::vector<Rational>>(data_) ? ArithmeticMode::Exact
                                                                : ArithmeticMode::Float;
  }
  bool is_exact() const { return mode() == ArithmeticMode::Exact; }

  int dim() const {
    return std::visit([](const auto& v) { return static_cast<int>(v.size()); }, data_);
  }

  const std::vector<Rational>& exact() const {
    if (!is_exact()) throw std::logic_error("point is not exact");
    return std::get<std::vector<Rational>>(data_);
  }

  std::vector<double> as_double() const {
    if (is_exact()) {
      std::vector<double> v;
      v.reserve(exact().size());
      for (const auto& q : exact()) v.push_back(q.get_d());
      return v;
    }
    return std::get<std::vector<double>>(data_);
  }

 private:
  std::variant<std::vector<Rational>, std::vector<double>> data_;
};

}  // namespace ccgeo::calc

#endif
