#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>

#include "doctest.h"
#include "pmclt.h"

namespace {
struct SpecHandle {
  pmclt_spec* p = nullptr;
  ~SpecHandle() { pmclt_spec_free(p); }
};

struct StringOut {
  char* s = nullptr;
  ~StringOut() { pmclt_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};
}  // namespace

TEST_CASE("status names are stable") {
  CHECK(std::string(pmclt_status_name(PMCLT_OK)) == "ok");
  CHECK(std::string(pmclt_status_name(PMCLT_PARSE_ERROR)) == "parse_error");
  CHECK(std::string(pmclt_status_name(PMCLT_ATOMS_PRESENT)) == "atoms_present");
  CHECK(std::string(pmclt_status_name(PMCLT_NU_OUT_OF_RANGE)) == "nu_out_of_range");
}

TEST_CASE("null arguments are rejected, with a message") {
  SpecHandle spec;
  CHECK(pmclt_spec_parse(nullptr, &spec.p) == PMCLT_INVALID_ARGUMENT);
  CHECK(std::strlen(pmclt_last_error()) > 0);
  CHECK(pmclt_spec_parse("{}", nullptr) == PMCLT_INVALID_ARGUMENT);
  double v = 0.0;
  CHECK(pmclt_pdf(nullptr, 0.0, &v) == PMCLT_INVALID_ARGUMENT);
  CHECK(pmclt_spec_example(0.5, nullptr) == PMCLT_INVALID_ARGUMENT);
}

TEST_CASE("parse failures surface as PARSE_ERROR") {
  SpecHandle spec;
  CHECK(pmclt_spec_parse("this is not json", &spec.p) == PMCLT_PARSE_ERROR);
  CHECK(spec.p == nullptr);
  CHECK(pmclt_spec_parse("{\"spec_version\":9}", &spec.p) == PMCLT_PARSE_ERROR);
  CHECK(pmclt_spec_load("/nonexistent/path/spec.json", &spec.p) == PMCLT_IO_ERROR);
}

TEST_CASE("example spec: point evaluations against frozen values") {
  SpecHandle spec;
  REQUIRE(pmclt_spec_example(0.5, &spec.p) == PMCLT_OK);
  REQUIRE(spec.p != nullptr);

  double sigma = 0.0;
  REQUIRE(pmclt_spec_sigma(spec.p, &sigma) == PMCLT_OK);
  CHECK(sigma == 1.0);

  double p0 = 0.0;
  REQUIRE(pmclt_pdf(spec.p, 0.0, &p0) == PMCLT_OK);
  CHECK(std::abs(p0 - 0.38938992474310064285) < 1e-12);

  double c0 = 0.0;
  REQUIRE(pmclt_cdf(spec.p, 0.0, &c0) == PMCLT_OK);
  CHECK(std::abs(c0 - 0.5) < 1e-12);

  double re = 0.0, im = 0.0;
  REQUIRE(pmclt_cf(spec.p, 1.0, &re, &im) == PMCLT_OK);
  CHECK(std::abs(re - 0.6065271270862733595) < 1e-10);
  CHECK(std::abs(im) < 1e-12);

  double m2 = 0.0;
  REQUIRE(pmclt_moment(spec.p, 2, &m2) == PMCLT_OK);
  CHECK(std::abs(m2 - 1.0) < 1e-9);

  double bad = 0.0;
  CHECK(pmclt_moment(spec.p, 200, &bad) == PMCLT_DIVERGENT_MOMENT);
}

TEST_CASE("example epsilon domain error carries the library message") {
  SpecHandle spec;
  CHECK(pmclt_spec_example(1.5, &spec.p) == PMCLT_INVALID_ARGUMENT);
  CHECK(std::string(pmclt_last_error()) == "epsilon out of (0,1)");
}

TEST_CASE("serialization round-trips and is byte-stable") {
  SpecHandle spec;
  REQUIRE(pmclt_spec_example(0.3, &spec.p) == PMCLT_OK);
  StringOut first, second;
  REQUIRE(pmclt_spec_to_json(spec.p, &first.s) == PMCLT_OK);
  SpecHandle back;
  REQUIRE(pmclt_spec_parse(first.s, &back.p) == PMCLT_OK);
  REQUIRE(pmclt_spec_to_json(back.p, &second.s) == PMCLT_OK);
  CHECK(first.str() == second.str());
  CHECK(first.str().find("\"spec_version\"") != std::string::npos);
}

TEST_CASE("report entry points produce the documented documents") {
  SpecHandle spec;
  REQUIRE(pmclt_spec_example(0.5, &spec.p) == PMCLT_OK);

  StringOut validation;
  REQUIRE(pmclt_validation_json(spec.p, &validation.s) == PMCLT_OK);
  CHECK(validation.str().find("\"cf_l1_norm\"") != std::string::npos);
  CHECK(validation.str().find("\"density_sup\"") != std::string::npos);

  StringOut pm;
  REQUIRE(pmclt_pseudomoments_json(spec.p, 3, 2, &pm.s) == PMCLT_OK);
  CHECK(pm.str().find("\"nu1\"") != std::string::npos);
  CHECK(pm.str().find("\"condition_ii_ok\"") != std::string::npos);

  const int64_t ns[2] = {2, 4};
  StringOut bound;
  REQUIRE(pmclt_bound_json(spec.p, 3, ns, 2, &bound.s) == PMCLT_OK);
  CHECK(bound.str().find("\"theorem1\"") != std::string::npos);
  CHECK(bound.str().find("\"geometric_term\"") != std::string::npos);

  const int64_t none[1] = {1};
  StringOut emp;
  REQUIRE(pmclt_empirical_json(spec.p, none, 1, nullptr, &emp.s) == PMCLT_OK);
  CHECK(emp.str().find("\"sup_cdf_dist\"") != std::string::npos);
  CHECK(emp.str().find("\"mc_ks\"") != std::string::npos);
}

TEST_CASE("verify at n = 1 passes on the example spec") {
  SpecHandle spec;
  REQUIRE(pmclt_spec_example(0.5, &spec.p) == PMCLT_OK);
  const int64_t ns[1] = {1};
  StringOut doc;
  int pass = 0;
  REQUIRE(pmclt_verify_json(spec.p, 3, ns, 1, nullptr, &doc.s, &pass) == PMCLT_OK);
  CHECK(pass == 1);
  CHECK(doc.str().find("\"remark1\"") != std::string::npos);
  CHECK(doc.str().find("\"margin\"") != std::string::npos);
}

TEST_CASE("grid json is parsed strictly") {
  SpecHandle spec;
  REQUIRE(pmclt_spec_example(0.5, &spec.p) == PMCLT_OK);
  const int64_t ns[1] = {1};
  StringOut doc;
  CHECK(pmclt_empirical_json(spec.p, ns, 1, "{\"pionts\":8192}", &doc.s) == PMCLT_PARSE_ERROR);
  CHECK(pmclt_empirical_json(spec.p, ns, 1, "{\"points\":2048}", &doc.s) ==
        PMCLT_INVALID_ARGUMENT);
  REQUIRE(pmclt_empirical_json(spec.p, ns, 1, "{\"mc_samples\":20000,\"mc_seed\":3}", &doc.s) ==
          PMCLT_OK);
  CHECK(doc.str().find("\"mc_seed\": 3") != std::string::npos);
}

TEST_CASE("lemma check through the C surface") {
  SpecHandle spec;
  REQUIRE(pmclt_spec_example(0.5, &spec.p) == PMCLT_OK);
  StringOut doc;
  int ok = 0;
  REQUIRE(pmclt_lemma_check_json(spec.p, 3, 1, 50, &doc.s, &ok) == PMCLT_OK);
  CHECK(ok == 1);
  CHECK(doc.str().find("\"violations\"") != std::string::npos);

  // Condition (ii) failure maps onto NU_OUT_OF_RANGE.
  SpecHandle uni;
  REQUIRE(pmclt_spec_parse(
              "{\"spec_version\":1,\"sigma\":1.0,\"pieces\":[{\"family\":\"uniform\","
              "\"interval\":[-1.7320508075688772,1.7320508075688772],"
              "\"weight\":0.28867513459481287}],\"atoms\":[]}",
              &uni.p) == PMCLT_OK);
  StringOut doc2;
  CHECK(pmclt_lemma_check_json(uni.p, 3, 1, 50, &doc2.s, &ok) == PMCLT_NU_OUT_OF_RANGE);
}
