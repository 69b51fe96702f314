#include <gtest/gtest.h>

#include "api/dispatch.hpp"
#include "elliptheta/elliptheta.h"
#include "verify/verify.hpp"

using namespace et;
using nlohmann::json;

TEST(Parse, Complex) {
  EXPECT_EQ(api::parse_complex("0+1i"), cplx(0, 1));
  EXPECT_EQ(api::parse_complex("-0.05i"), cplx(0, -0.05));
  EXPECT_EQ(api::parse_complex("1.5"), cplx(1.5, 0));
  EXPECT_EQ(api::parse_complex("2-i"), cplx(2, -1));
  EXPECT_EQ(api::parse_complex("1e-3+2E+1i"), cplx(1e-3, 20));
  EXPECT_EQ(api::parse_complex(" 0.3 - 0.2i "), cplx(0.3, -0.2));
  EXPECT_THROW(api::parse_complex("1+x"), Error);
  EXPECT_THROW(api::parse_complex(""), Error);
}

TEST(Parse, Range) {
  EXPECT_EQ(api::parse_int_range("0..3"), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(api::parse_int_range("-1"), (std::vector<int>{-1}));
  EXPECT_THROW(api::parse_int_range("3..1"), Error);
}

TEST(Dispatch, EvalAndUnknowns) {
  const Truncation tr = Truncation::defaults();
  const json r = api::eval({{"target", "jacobi_theta"}, {"params", {{"lambda", "0+0i"}, {"tau", "0+1i"}}}}, tr);
  EXPECT_LT(std::hypot(r["result"]["re"].get<double>(), r["result"]["im"].get<double>()), 1e-14);
  EXPECT_THROW(api::eval({{"target", "nope"}}, tr), Error);
  EXPECT_THROW(api::eval({{"target", "jacobi_theta"}, {"params", {{"lambda", "0"}}}}, tr), Error);
  EXPECT_THROW(api::eval({{"target", "jacobi_theta"}, {"params", {{"lambda", "0"}, {"tau", "1i"}, {"x", 1}}}}, tr),
               Error);
}

TEST(Dispatch, TableGrid) {
  const json t = api::table({{"target", "macdonald_m2"}, {"params", {{"j", "0..4"}, {"q", "7/4"}}}},
                            Truncation::defaults());
  ASSERT_EQ(t["rows"].size(), 5u);
  const auto& cols = t["columns"];
  const auto at = [&](const std::string& c) {
    return static_cast<std::size_t>(std::find(cols.begin(), cols.end(), c) - cols.begin());
  };
  EXPECT_EQ(t["rows"][0][at("polynomial")], "1");
  EXPECT_EQ(t["rows"][1][at("polynomial")], "x + x^-1");
}

TEST(Dispatch, RegimeErrorsBecomeRows) {
  const json t = api::table({{"target", "theta0"}, {"params", {{"x", "1"}, {"q", json::array({"0.5", "2"})}}}},
                            Truncation::defaults());
  const auto& cols = t["columns"];
  const std::size_t st = std::find(cols.begin(), cols.end(), "status") - cols.begin();
  EXPECT_NE(t["rows"][0][st].get<std::string>().find("divergence"), std::string::npos);
  EXPECT_EQ(t["rows"][1][st], "ok");
}

TEST(Verify, DeterministicWithoutTiming) {
  verify::SuiteOptions o;
  json a = verify::run_suite("theta", o).to_json(), b = verify::run_suite("theta", o).to_json();
  a.erase("timing");
  b.erase("timing");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(CApi, Roundtrip) {
  et_context* ctx = nullptr;
  ASSERT_EQ(et_context_create(&ctx), ET_OK);
  et_result r{};
  EXPECT_EQ(et_jacobi_theta(ctx, {0.25, 0.0}, {0.0, 1.0}, &r), ET_OK);
  EXPECT_GT(r.value.re, 0.0);
  EXPECT_EQ(et_jacobi_theta(ctx, {0.25, 0.0}, {0.0, -1.0}, &r), ET_DOMAIN);
  EXPECT_NE(std::string(et_last_error(ctx)).find("tau"), std::string::npos);
  char* poly = nullptr;
  EXPECT_EQ(et_macdonald_m2(ctx, 1, "7/4", &poly), ET_OK);
  EXPECT_STREQ(poly, "x + x^-1");
  et_string_free(poly);
  char* out = nullptr;
  EXPECT_EQ(et_eval(ctx, "{\"target\":\"psi\",\"params\":{\"tau\":\"0\",\"p\":\"0\",\"eta\":\"0\"}}", &out), ET_OK);
  EXPECT_EQ(json::parse(out)["result"]["value"], "2+0i");
  et_string_free(out);
  EXPECT_EQ(et_eval(ctx, "{not json", &out), ET_ARGUMENT);
  EXPECT_EQ(et_set_truncation(ctx, "{\"quad_points\": 0}"), ET_ARGUMENT);
  EXPECT_EQ(et_jacobi_theta(ctx, {0.25, 0.0}, {0.0, 1.0}, nullptr), ET_ARGUMENT);
  et_context_destroy(ctx);
}
