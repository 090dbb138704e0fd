#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "kinterp/kinterp.h"

TEST_CASE("version and errors") {
  CHECK(std::strlen(kinterp_version()) > 0);
  kinterp_report* r = nullptr;
  kinterp_config* cfg = nullptr;
  REQUIRE(kinterp_config_new(&cfg) == KINTERP_OK);
  CHECK(kinterp_run_suite("no-such-suite", cfg, &r) == KINTERP_E_USAGE);
  CHECK(r == nullptr);
  CHECK(std::string(kinterp_last_error()).find("no-such-suite") != std::string::npos);
  CHECK(kinterp_config_set_grid(cfg, 2.0, 64) != KINTERP_OK);
  CHECK(kinterp_config_add_lattice(cfg, "t^-1; q=zero") != KINTERP_OK);
  CHECK(kinterp_run_suite(nullptr, cfg, &r) == KINTERP_E_ARGUMENT);
  kinterp_config_free(cfg);
}

TEST_CASE("suites through handles") {
  CHECK(kinterp_suite_count() == 14);
  CHECK(std::string(kinterp_suite_name(0)) == "wtilde");
  CHECK(kinterp_suite_name(99) == nullptr);

  kinterp_config* cfg = nullptr;
  REQUIRE(kinterp_config_new(&cfg) == KINTERP_OK);
  kinterp_config_set_timestamp(cfg, 0);
  kinterp_report* r = nullptr;
  REQUIRE(kinterp_run_suite("calib", cfg, &r) == KINTERP_OK);
  kinterp_result res;
  REQUIRE(kinterp_report_result(r, &res) == KINTERP_OK);
  CHECK(res == KINTERP_PASS);
  REQUIRE(kinterp_report_assertion_count(r) > 0);
  const char* name = nullptr;
  double v = 0, b = 0;
  int pass = 0;
  REQUIRE(kinterp_report_assertion(r, 0, &name, &v, &b, &pass) == KINTERP_OK);
  CHECK(name != nullptr);
  CHECK(pass == 1);
  CHECK(kinterp_report_assertion(r, 100000, &name, &v, &b, &pass) == KINTERP_E_ARGUMENT);

  char* json = nullptr;
  const kinterp_report* one[] = {r};
  REQUIRE(kinterp_report_emit(one, 1, "json", &json) == KINTERP_OK);
  kinterp_report* back = nullptr;
  REQUIRE(kinterp_report_parse_json(json, &back) == KINTERP_OK);
  char* json2 = nullptr;
  const kinterp_report* two[] = {back};
  REQUIRE(kinterp_report_emit(two, 1, "json", &json2) == KINTERP_OK);
  CHECK(std::string(json) == std::string(json2));
  CHECK(kinterp_exit_code(one, 1) == 0);
  char* bad = nullptr;
  CHECK(kinterp_report_emit(one, 1, "yaml", &bad) == KINTERP_E_USAGE);
  kinterp_string_free(json);
  kinterp_string_free(json2);
  kinterp_report_free(back);
  kinterp_report_free(r);
  kinterp_config_free(cfg);
}

TEST_CASE("profiles") {
  double t[] = {1.0}, k[] = {1.0};
  kinterp_profile* p = nullptr;
  REQUIRE(kinterp_profile_new(t, k, 1, &p) == KINTERP_OK);
  double v = 0;
  kinterp_profile_eval(p, 0.25, &v);
  CHECK(v == doctest::Approx(0.25));
  REQUIRE(kinterp_profile_norm(p, 0.5, 2.0, 1, 0, &v) == KINTERP_OK);
  CHECK(v == doctest::Approx(1.0));
  int div = -1;
  REQUIRE(kinterp_profile_lattice_norm(p, "t^-1*(1-ln t)^-0; q=inf; domain=(0,1]", 1e-12, 64, &v, &div) == KINTERP_OK);
  CHECK(v == doctest::Approx(1.0));
  CHECK(div == 0);
  REQUIRE(kinterp_profile_extrap_norm(p, "t^-1*(1-ln t)^-0.5; q=inf; domain=(0,1]", 1.0, 1e-12, 64, &v, nullptr) == KINTERP_OK);
  CHECK(std::isfinite(v));
  CHECK(v > 0.3);
  kinterp_profile_free(p);

  double tb[] = {0.5, 1.0}, kb[] = {1.0, 1.2};  // slope drops from 2 to 0.4: fine
  REQUIRE(kinterp_profile_new(tb, kb, 2, &p) == KINTERP_OK);
  kinterp_profile_free(p);
  double kc[] = {0.1, 1.0};  // slope rises: not concave
  CHECK(kinterp_profile_new(tb, kc, 2, &p) == KINTERP_E_DOMAIN);
}

TEST_CASE("functions and operators") {
  double t[] = {0.0}, v[] = {1.0};
  kinterp_function* f = nullptr;
  REQUIRE(kinterp_function_new(t, v, 1, &f) == KINTERP_OK);
  double x = 0;
  int div = -1;
  REQUIRE(kinterp_function_llogl(f, 1.0, &x, &div) == KINTERP_OK);
  CHECK(x == doctest::Approx(2.0));
  CHECK(div == 0);
  REQUIRE(kinterp_function_k_lp(f, 0.5, 2.0, &x) == KINTERP_OK);
  CHECK(x == doctest::Approx(0.5));
  REQUIRE(kinterp_function_grand_fk(f, 2.0, 1.0, &x) == KINTERP_OK);
  CHECK(x == doctest::Approx(0.5639).epsilon(1e-3));
  CHECK(kinterp_function_grand_def(f, 0.5, 1.0, &x) == KINTERP_E_ARGUMENT);
  kinterp_function_free(f);

  kinterp_operator* m = nullptr;
  REQUIRE(kinterp_operator_parse("3\n", &m) == KINTERP_OK);
  CHECK(kinterp_operator_dim(m) == 1);
  REQUIRE(kinterp_operator_schatten(m, 2.0, &x) == KINTERP_OK);
  CHECK(x == doctest::Approx(3.0));
  kinterp_operator_free(m);
  REQUIRE(kinterp_operator_volterra(64, &m) == KINTERP_OK);
  std::vector<double> s(4);
  std::size_t count = 0;
  REQUIRE(kinterp_operator_s_numbers(m, s.data(), s.size(), &count) == KINTERP_OK);
  CHECK(count == 64);
  CHECK(s[0] == doctest::Approx(2.0 / M_PI).epsilon(0.03));
  REQUIRE(kinterp_operator_matsaev(m, 1.0, &x) == KINTERP_OK);
  CHECK(x == doctest::Approx(s[0]));
  kinterp_operator_free(m);
  CHECK(kinterp_operator_parse("1,2;3\n4\n", &m) != KINTERP_OK);
}
