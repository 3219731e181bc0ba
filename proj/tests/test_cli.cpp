// Exercises the installed binary end to end: ctest invokes this runner with
// the CLI path as the final argument.
#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

std::string g_cli;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::filesystem::path scratch_path(const std::string& stem) {
  static int counter = 0;
  return std::filesystem::temp_directory_path() /
         ("pmclt_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" +
          stem);
}

RunResult run_cli(const std::string& args) {
  const auto out_f = scratch_path("stdout");
  const auto err_f = scratch_path("stderr");
  const std::string cmd =
      "\"" + g_cli + "\" " + args + " >" + out_f.string() + " 2>" + err_f.string();
  const int rc = std::system(cmd.c_str());
  RunResult r;
  if (rc != -1 && WIFEXITED(rc)) r.exit_code = WEXITSTATUS(rc);
  r.out = slurp(out_f);
  r.err = slurp(err_f);
  std::filesystem::remove(out_f);
  std::filesystem::remove(err_f);
  return r;
}

const char* kNormalSpec =
    "{\"spec_version\":1,\"sigma\":1.0,\"pieces\":[{\"family\":\"gaussian_restriction\","
    "\"interval\":[\"-inf\",\"+inf\"],\"weight\":1.0}],\"atoms\":[]}";

}  // namespace

TEST_CASE("example subcommand emits a parseable spec document") {
  const auto r = run_cli("example --epsilon 0.4");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("spec_version") == 1);
  CHECK(doc.at("sigma") == 1.0);
  REQUIRE(doc.at("pieces").size() == 3);
  CHECK(doc.at("metadata").at("epsilon") == 0.4);
  CHECK(doc.at("metadata").contains("theta"));
}

TEST_CASE("domain errors produce the structured record on stderr, exit 1") {
  const auto r = run_cli("example --epsilon 1.5");
  CHECK(r.exit_code == 1);
  CHECK(r.out.empty());
  const auto rec = nlohmann::json::parse(r.err);
  CHECK(rec.at("tool") == "pseudomoment-clt");
  CHECK(rec.at("error").at("status") == "invalid_argument");
  CHECK(rec.at("error").at("message") == "epsilon out of (0,1)");
}

TEST_CASE("exactly one spec source is enforced") {
  const auto r = run_cli("bound --m 3");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("exactly one of --spec and --example-epsilon") != std::string::npos);
}

TEST_CASE("bound on a normal spec file: nu terms vanish, geometry remains") {
  const auto spec_f = scratch_path("normal.json");
  {
    std::ofstream os(spec_f);
    os << kNormalSpec;
  }
  const auto r = run_cli("bound --spec " + spec_f.string() + " --m 3 --n 10");
  std::filesystem::remove(spec_f);
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.at("results").size() == 1);
  const auto& entry = doc.at("results").at(0);
  CHECK(entry.at("n") == 10);
  const auto& t1 = entry.at("bounds").at("theorem1");
  CHECK(t1.at("nu1") == 0.0);
  CHECK(t1.at("nu2") == 0.0);
  CHECK(t1.at("valid") == true);
  CHECK(t1.at("total") == t1.at("terms").at("geometric_term"));
  // remark1 applies only to n = 1 and must be marked skipped here.
  CHECK(entry.at("bounds").at("remark1").contains("skipped"));
}

TEST_CASE("verify passes at n = 1 on the example and exits 0") {
  const auto r = run_cli("verify --example-epsilon 0.5 --m 3 --n 1");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("pass") == true);
  const auto& checks = doc.at("results").at(0).at("checks");
  bool saw_remark = false;
  for (const auto& row : checks) {
    CHECK(row.at("pass") == true);
    if (row.at("kind") == "remark1") saw_remark = true;
  }
  CHECK(saw_remark);
}

TEST_CASE("repeated runs are byte-identical") {
  const auto f1 = scratch_path("v1.json");
  const auto f2 = scratch_path("v2.json");
  const std::string base = "verify --example-epsilon 0.5 --m 3 --n 1 --out ";
  const auto r1 = run_cli(base + f1.string());
  const auto r2 = run_cli(base + f2.string());
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  CHECK(r1.out.empty());
  const std::string a = slurp(f1), b = slurp(f2);
  std::filesystem::remove(f1);
  std::filesystem::remove(f2);
  REQUIRE_FALSE(a.empty());
  CHECK(a == b);
}

TEST_CASE("csv layouts have fixed headers") {
  const auto r = run_cli("bound --example-epsilon 0.5 --m 3 --n 4 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("n,kind,total,main_nu1_term,main_nu2_term,geometric_term,"
                    "exponential_term,valid\n",
                    0) == 0);
  CHECK(r.out.find(",theorem1,") != std::string::npos);
  CHECK(r.out.find(",corollary1,") != std::string::npos);
  CHECK(r.out.find(",theorem2,") != std::string::npos);
  CHECK(r.out.find("remark1") == std::string::npos);  // skipped at n = 4

  const auto e = run_cli("empirical --example-epsilon 0.5 --n 1 --format csv");
  REQUIRE(e.exit_code == 0);
  CHECK(e.out.rfind("n,sup_cdf_dist,sup_pdf_dist,mc_ks,inversion_error_estimate\n", 0) == 0);
}

TEST_CASE("lemma-check passes on the example spec") {
  const auto r = run_cli("lemma-check --example-epsilon 0.5 --m 3 --n 2");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("ok") == true);
  CHECK(doc.at("violations") == 0);
}

TEST_CASE("argument errors from the parser exit 1") {
  CHECK(run_cli("bound --nope").exit_code == 1);
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("empirical --example-epsilon 0.5").exit_code == 1);  // --n required
}

int main(int argc, char** argv) {
  if (argc >= 2 && argv[argc - 1][0] != '-') {
    g_cli = argv[argc - 1];
    --argc;
  }
  if (g_cli.empty()) {
    std::fprintf(stderr, "usage: test_cli [doctest args] <path-to-pmclt-binary>\n");
    return 1;
  }
  doctest::Context ctx(argc, argv);
  return ctx.run();
}
