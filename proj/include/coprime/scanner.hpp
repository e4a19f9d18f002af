#pragma once

#include <vector>

#include "coprime/arith.hpp"
#include "coprime/json.hpp"

namespace coprime {

/// Prime-gap condition at index t (1-based, p_1 = 2):
///   p_{t+7} p_{t+8} < p_t p_{t+9}   (some n fits the window)
///   p_{t+9} < p_t^2
struct HRecord {
  Int t = 0;
  Int p_t = 0;
  Int p_t7 = 0;
  Int p_t8 = 0;
  Int p_t9 = 0;
  bool window_nonempty = false;
  bool square_ok = false;
  bool holds = false;
};

HRecord evaluate_H(const std::vector<Int>& primes, Int t);

/// Every t <= t_max at which the condition holds, ascending.
std::vector<HRecord> scan_H(Int t_max);

struct HDensity {
  Int hits = 0;
  Int t_max = 0;
  double ratio = 0.0;
};

HDensity h_density(Int t_max);

ordered_json to_json(const HRecord& record);

}  // namespace coprime
