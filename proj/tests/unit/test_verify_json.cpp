#include <doctest.h>

#include <json.hpp>

#include <map>

#include "helpers.hpp"
#include "sandpile/json_io.hpp"
#include "sandpile/verify.hpp"

using namespace sandpile;
using testutil::cfg;

TEST_CASE("configuration JSON round-trips") {
  const Configuration c = cfg("1,4,_3,2,1");
  CHECK(to_json_string(c) == R"({"origin":-2,"heights":[1,4,3,2,1]})");
  CHECK(config_from_json(to_json_string(c)) == c);
  CHECK(config_from_json(R"({"origin":3,"heights":[0,2,1,0]})") ==
        Configuration::from_heights(3, {0, 2, 1, 0}));
  CHECK_THROWS_AS(config_from_json("not json"), ParseError);
  CHECK_THROWS_AS(config_from_json(R"({"origin":0})"), ParseError);
  CHECK_THROWS_AS(config_from_json(R"({"origin":0,"heights":[-1]})"), ParseError);
}

TEST_CASE("chain JSON carries the count and both extremes") {
  const auto j = nlohmann::json::parse(to_json_string(enumerate_fixpoints(5)));
  CHECK(j["n"] == 5);
  CHECK(j["count"] == 2);
  CHECK(j["rightmost"]["origin"] == -1);
  CHECK(j["leftmost"]["origin"] == -2);
  REQUIRE(j["points"].size() == 2);
  CHECK(j["points"][0]["text"] == "1,_2,1,1");
  CHECK(j["points"][1]["text"] == "1,1,_2,1");
}

TEST_CASE("run_verification covers every requested (check, n) cell exactly once") {
  VerifyOptions opts;
  opts.n_max = 6;
  const auto results = run_verification(opts);
  CHECK(results.size() == all_check_names().size() * 7);

  std::map<std::pair<std::string, Height>, int> seen;
  for (const auto& r : results) ++seen[{r.check, r.grains}];
  for (const auto& [key, count] : seen) CHECK(count == 1);

  // sorted by check name, then n
  for (std::size_t i = 1; i < results.size(); ++i) {
    const auto& a = results[i - 1];
    const auto& b = results[i];
    CHECK((a.check < b.check || (a.check == b.check && a.grains < b.grains)));
  }
}

TEST_CASE("the verification run records the known anomaly and nothing else") {
  VerifyOptions opts;
  opts.n_max = 9;
  const auto results = run_verification(opts);
  for (const auto& r : results) {
    CAPTURE(r.check);
    CAPTURE(r.grains);
    if (r.check == "successor-uniqueness" && (r.grains == 4 || r.grains == 9)) {
      CHECK_FALSE(r.pass);
      CHECK(r.witness.find("2 close partners") != std::string::npos);
    } else {
      CHECK(r.pass);
    }
  }
  CHECK_FALSE(all_pass(results));
}

TEST_CASE("selected checks pass cleanly below the anomaly") {
  VerifyOptions opts;
  opts.n_max = 3;
  const auto results = run_verification(opts);
  CHECK(all_pass(results));
}

TEST_CASE("rows above a check's default ceiling are skipped, not failed") {
  VerifyOptions opts;
  opts.n_max = 12;
  opts.checks = {"technical-lemma"};
  const auto results = run_verification(opts);
  REQUIRE(results.size() == 13);
  for (const auto& r : results) {
    if (r.grains > 10) {
      CHECK(r.capped);
      CHECK(r.pass);
    } else {
      CHECK_FALSE(r.capped);
    }
  }
}

TEST_CASE("unknown check names are rejected") {
  VerifyOptions opts;
  opts.checks = {"no-such-check"};
  CHECK_THROWS_AS(run_verification(opts), ParseError);
}

TEST_CASE("verification reports are byte-identical modulo elapsed times") {
  VerifyOptions opts;
  opts.n_max = 5;
  opts.seed = 12345;
  const auto strip = [](std::vector<CheckResult> rows) {
    for (auto& r : rows) r.elapsed_ms = 0.0;
    return to_json_string(std::span<const CheckResult>(rows));
  };
  const std::string a = strip(run_verification(opts));
  const std::string b = strip(run_verification(opts));
  CHECK(a == b);

  const auto j = nlohmann::json::parse(a);
  CHECK(j.contains("all_pass"));
  REQUIRE(j["results"].is_array());
  for (const auto& row : j["results"]) {
    CHECK(row.contains("check"));
    CHECK(row.contains("n"));
    CHECK(row.contains("pass"));
  }
}
