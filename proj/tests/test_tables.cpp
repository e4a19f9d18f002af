#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "coprime/tables.hpp"

using namespace coprime;

namespace {

std::set<Int> covered(const CaseTable& t) {
  std::set<Int> out;
  for (const auto& e : t.entries) out.insert(e.a_values.begin(), e.a_values.end());
  return out;
}

TableError::Kind parse_kind(const std::string& text) {
  try {
    parse_table(text);
  } catch (const TableError& e) {
    return e.kind();
  }
  FAIL("expected a TableError");
  return TableError::Kind::unsupported;
}

const char* kMinimalK3 = R"({"k": 3, "entries": [
  {"a_values": [13, 17, 19], "condition": null,
   "blocks": [[8, 9, 5, 7, 11, 13, 17], [4, 3, -5, 1, -1, 19]], "provenance": "x"},
  {"a_values": [23], "condition": null,
   "blocks": [[8, 3, 5, 11, 23], [-2, -3, -5, -1, 1, 7], [21, 22, 13, 17, 19]], "provenance": "y"}]})";

}  // namespace

TEST_CASE("builtin k=3 table") {
  const auto t = builtin_table(3);
  CHECK(t.k == 3);
  REQUIRE(t.entries.size() == 2);
  CHECK(t.entries[0].a_values == std::vector<Int>{13, 17, 19});
  CHECK(t.entries[0].blocks.size() == 2);
  CHECK(t.entries[1].a_values == std::vector<Int>{23});
  CHECK(t.entries[1].blocks.size() == 3);
  CHECK(covered(t) == std::set<Int>{13, 17, 19, 23});
}

TEST_CASE("builtin k=4 table covers the 44 residues above 13") {
  const auto t = builtin_table(4);
  const auto cov = covered(t);
  CHECK(cov.size() == 44);
  CHECK(*cov.begin() == 17);
  CHECK(*cov.rbegin() == 199);
  std::set<Int> conditioned;
  for (const auto& e : t.entries) {
    if (e.condition) conditioned.insert(e.a_values.begin(), e.a_values.end());
  }
  CHECK(conditioned == std::set<Int>{71});
  const auto e71 = t.entries_for(71);
  REQUIRE(e71.size() == 2);
  CHECK(e71[0]->condition->complements(*e71[1]->condition));

  const auto e97 = t.entries_for(97);
  REQUIRE(e97.size() == 1);
  REQUIRE(e97[0]->blocks.size() == 1);
  CHECK(e97[0]->blocks[0].elements == std::vector<Int>{91, 95, 93, 94, 97});

  const auto c1 = t.entries_for(17);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0]->a_values == std::vector<Int>{17, 19, 23, 29, 31});
}

TEST_CASE("case 18 keeps a different fourth block for 193") {
  const auto t = builtin_table(4);
  const auto a191 = t.entries_for(191);
  const auto a193 = t.entries_for(193);
  REQUIRE(a191.size() == 1);
  REQUIRE(a193.size() == 1);
  CHECK(a191[0] == t.entries_for(197)[0]);
  CHECK(a191[0] != a193[0]);
  REQUIRE(a191[0]->blocks.size() == 4);
  REQUIRE(a193[0]->blocks.size() == 4);
  for (int i = 0; i < 3; ++i) CHECK(a191[0]->blocks[i] == a193[0]->blocks[i]);
  CHECK(a191[0]->blocks[3] != a193[0]->blocks[3]);
}

TEST_CASE("builtin_table rejects other k") {
  CHECK_THROWS_AS(builtin_table(5), TableError);
  try {
    builtin_table(2);
  } catch (const TableError& e) {
    CHECK(e.kind() == TableError::Kind::unsupported);
  }
}

TEST_CASE("serialization round-trips") {
  for (int k : {3, 4}) {
    const auto t = builtin_table(k);
    CHECK(parse_table(serialize_table(t)) == t);
  }
  const auto minimal = parse_table(kMinimalK3);
  const auto builtin = builtin_table(3);
  for (std::size_t i = 0; i < builtin.entries.size(); ++i) {
    CHECK(minimal.entries[i].blocks == builtin.entries[i].blocks);
  }
}

TEST_CASE("load_table from a file") {
  const auto path = std::filesystem::temp_directory_path() / "coprime_table_k4.json";
  {
    std::ofstream out(path);
    out << serialize_table(builtin_table(4));
  }
  CHECK(load_table(path) == builtin_table(4));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_table("/nonexistent/table.json"), TableError);
}

TEST_CASE("a_value outside T_k is an invariant violation") {
  std::string text = kMinimalK3;
  text.replace(text.find("[13, 17, 19]"), 12, "[13, 17, 19, 25]");
  CHECK(parse_kind(text) == TableError::Kind::invariant);
}

TEST_CASE("overlapping conditions are rejected") {
  auto j = table_to_json(builtin_table(4));
  for (auto& e : j["entries"]) {
    if (!e["condition"].is_null()) e["condition"]["divides"] = true;
  }
  CHECK(parse_kind(j.dump()) == TableError::Kind::invariant);
}

TEST_CASE("a lone conditioned entry is rejected") {
  auto j = table_to_json(builtin_table(4));
  auto& entries = j["entries"];
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i]["condition"].is_null()) {
      entries.erase(i);
      break;
    }
  }
  CHECK(parse_kind(j.dump()) == TableError::Kind::invariant);
}

TEST_CASE("coverage gap is rejected") {
  auto j = table_to_json(builtin_table(3));
  j["entries"].erase(1);
  CHECK(parse_kind(j.dump()) == TableError::Kind::invariant);
}

TEST_CASE("malformed input") {
  CHECK(parse_kind("{") == TableError::Kind::parse);
  CHECK(parse_kind(R"({"k": 3})") == TableError::Kind::parse);
  std::string frac = kMinimalK3;
  frac.replace(frac.find("[23]"), 4, "[23.0]");
  CHECK(parse_kind(frac) == TableError::Kind::parse);
  std::string dup = kMinimalK3;
  dup.replace(dup.find("[21, 22,"), 8, "[21, 21,");
  CHECK(parse_kind(dup) == TableError::Kind::invariant);
  std::string cond = kMinimalK3;
  cond.replace(cond.find("null"), 4,
               R"([{"prime": 11, "divides": true, "anchor": 0}, {"prime": 13, "divides": true, "anchor": 0}])");
  CHECK(parse_kind(cond) == TableError::Kind::invariant);
}
