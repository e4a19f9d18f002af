#include "coprime/scanner.hpp"

#include <stdexcept>

namespace coprime {

HRecord evaluate_H(const std::vector<Int>& primes, Int t) {
  if (t < 1 || static_cast<std::size_t>(t + 9) > primes.size()) {
    throw std::out_of_range("prime table too short for t=" + std::to_string(t));
  }
  auto p = [&](Int i) { return primes[static_cast<std::size_t>(i - 1)]; };
  HRecord r;
  r.t = t;
  r.p_t = p(t);
  r.p_t7 = p(t + 7);
  r.p_t8 = p(t + 8);
  r.p_t9 = p(t + 9);
  using Wide = __int128;
  r.window_nonempty = Wide{r.p_t7} * r.p_t8 < Wide{r.p_t} * r.p_t9;
  r.square_ok = Wide{r.p_t9} < Wide{r.p_t} * r.p_t;
  r.holds = r.window_nonempty && r.square_ok;
  return r;
}

std::vector<HRecord> scan_H(Int t_max) {
  if (t_max < 1) throw std::invalid_argument("scan requires t_max >= 1");
  const auto primes = first_primes(static_cast<std::size_t>(t_max + 9));
  std::vector<HRecord> hits;
  for (Int t = 1; t <= t_max; ++t) {
    auto r = evaluate_H(primes, t);
    if (r.holds) hits.push_back(r);
  }
  return hits;
}

HDensity h_density(Int t_max) {
  HDensity d;
  d.t_max = t_max;
  d.hits = static_cast<Int>(scan_H(t_max).size());
  d.ratio = static_cast<double>(d.hits) / static_cast<double>(t_max);
  return d;
}

ordered_json to_json(const HRecord& r) {
  ordered_json j;
  j["t"] = r.t;
  j["p_t"] = r.p_t;
  j["p_t+7"] = r.p_t7;
  j["p_t+8"] = r.p_t8;
  j["p_t+9"] = r.p_t9;
  j["window_nonempty"] = r.window_nonempty;
  j["square_ok"] = r.square_ok;
  j["holds"] = r.holds;
  return j;
}

}  // namespace coprime
