#include <doctest.h>

#include "dbscale_suite/suite.hpp"

using namespace dbscale;
using namespace dbscale::suite;

namespace {

nlohmann::json without_runtime(nlohmann::json j) {
  for (auto& r : j["records"]) r.erase("runtime_ms");
  return j;
}

}  // namespace

TEST_SUITE("suite") {
  TEST_CASE("config validation") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    auto bad = [](auto mutate) {
      RunConfig r;
      mutate(r);
      try {
        r.validate();
      } catch (const Error& e) {
        return e.code() == ErrorCode::InvalidArgument;
      }
      return false;
    };
    CHECK(bad([](RunConfig& r) { r.a = 0.0; }));
    CHECK(bad([](RunConfig& r) { r.tol = -1.0; }));
    CHECK(bad([](RunConfig& r) { r.grid_n = 2; }));
    CHECK(bad([](RunConfig& r) { r.window_lo = 6.0; }));
    CHECK(bad([](RunConfig& r) { r.only = {0}; }));
  }

  TEST_CASE("sixteen criteria") {
    REQUIRE(criteria().size() == 16);
    for (int k = 0; k < 16; ++k) CHECK(criteria()[k].id == k + 1);
  }

  TEST_CASE("reports are deterministic and sorted") {
    RunConfig c;
    c.only = {1, 3, 10, 16};
    const auto one = run_verify(c, 1);
    const auto many = run_verify(c, 3);
    REQUIRE(!one.empty());
    CHECK(without_runtime(report_json(c, one)).dump() == without_runtime(report_json(c, many)).dump());
    for (std::size_t k = 1; k < one.size(); ++k) CHECK(one[k - 1].check_id < one[k].check_id);
    for (const int id : c.only) CHECK(criterion_passed(one, id));
    CHECK_FALSE(criterion_passed(one, 2));

    const auto j = report_json(c, one);
    CHECK(j["summary"]["all_pass"].get<bool>());
    CHECK(j["summary"]["criteria"].size() == 4);

    RunConfig other = c;
    other.seed = 7;
    CHECK(report_json(other, run_verify(other, 1))["summary"]["all_pass"].get<bool>());
  }

  TEST_CASE("tolerance override forces failures") {
    RunConfig c;
    c.only = {3};
    c.tol = 1e-30;
    c.tol_override = true;
    const auto recs = run_verify(c, 1);
    REQUIRE(!recs.empty());
    CHECK_FALSE(criterion_passed(recs, 3));
  }

  TEST_CASE("CSV output") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CheckRecord r{"x.y", 1, {{"k", 1}}, 1e-12, 1e-10, true, 2.5, "a,b"};
    const std::string csv = records_csv({r});
    CHECK(csv.rfind("check_id,criterion,max_abs_err,tol,pass,runtime_ms,params,note\n", 0) == 0);
    CHECK(csv.find(R"(x.y,1,9.9999999999999998e-13,1e-10,true,2.5,"{""k"":1}","a,b")") != std::string::npos);
  }
}
