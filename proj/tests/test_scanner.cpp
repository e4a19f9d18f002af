#include <doctest.h>

#include "coprime/scanner.hpp"
#include "oracle.hpp"

using namespace coprime;

namespace {

std::vector<Int> ts(const std::vector<HRecord>& rs) {
  std::vector<Int> out;
  for (const auto& r : rs) out.push_back(r.t);
  return out;
}

}  // namespace

TEST_CASE("scan_H examples") {
  CHECK(ts(scan_H(300)) == std::vector<Int>{209});
  CHECK(ts(scan_H(2000)) == std::vector<Int>{209, 1823});
  CHECK(scan_H(100).empty());
  CHECK_THROWS(scan_H(0));
}

TEST_CASE("reported hits re-check with the oracle primes") {
  const auto primes = oracle::first_n_primes(2009);
  for (const auto& r : scan_H(2000)) {
    const auto p = [&](Int i) { return primes[static_cast<std::size_t>(i - 1)]; };
    CHECK(r.p_t == p(r.t));
    CHECK(r.p_t9 == p(r.t + 9));
    CHECK(r.p_t7 * r.p_t8 < r.p_t * r.p_t9);
    CHECK(r.p_t9 < r.p_t * r.p_t);
    CHECK(r.holds);
  }
}

TEST_CASE("evaluate_H fields") {
  const auto primes = first_primes(300);
  const auto r = evaluate_H(primes, 209);
  CHECK(r.p_t == 1289);
  CHECK(r.p_t7 == 1321);
  CHECK(r.p_t8 == 1327);
  CHECK(r.p_t9 == 1361);
  CHECK(r.window_nonempty);
  CHECK(r.square_ok);
  const auto small = evaluate_H(primes, 1);
  CHECK(small.holds == (small.window_nonempty && small.square_ok));
  CHECK_FALSE(small.square_ok);  // p_10 = 29 > 2^2
  const auto j = to_json(r);
  CHECK(j["p_t+9"] == 1361);
  CHECK(j["holds"] == true);
}

TEST_CASE("scans are prefixes of longer scans") {
  const auto full = scan_H(2000);
  for (Int t : {150, 209, 210, 500, 1822, 1823}) {
    const auto part = scan_H(t);
    REQUIRE(part.size() <= full.size());
    for (std::size_t i = 0; i < part.size(); ++i) CHECK(part[i].t == full[i].t);
  }
}

TEST_CASE("h_density") {
  auto d = h_density(2000);
  CHECK(d.hits == 2);
  CHECK(d.ratio == doctest::Approx(0.001));
  d = h_density(100);
  CHECK(d.hits == 0);
  CHECK(d.ratio == 0.0);
  d = h_density(250);
  CHECK(d.hits == 1);
  CHECK(d.ratio == doctest::Approx(0.004));
}
