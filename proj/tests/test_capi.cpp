#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "ksp/ksp.h"

namespace {

const char* kE1 = "p sp 7 4 3\ns 1 2 3\ns 1 4 5\ns 2 6 7\ns 4 5 6\n";

std::string temp_path(const char* name) {
  return std::string(KSP_TMP_DIR) + "/" + name;
}

void put(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

}  // namespace

TEST_CASE("family handles") {
  ksp_family* f = nullptr;
  REQUIRE(ksp_family_parse(kE1, &f) == KSP_OK);
  CHECK(ksp_family_num_elements(f) == 7);
  CHECK(ksp_family_num_sets(f) == 4);
  CHECK(ksp_family_k(f) == 3);
  int buf[3];
  CHECK(ksp_family_set(f, 3, buf, 3) == 3);
  CHECK(buf[0] == 4);
  CHECK(buf[2] == 6);
  CHECK(ksp_family_set(f, 4, nullptr, 0) == -1);
  ksp_family_free(f);

  const int sizes[] = {2, 1};
  const int elems[] = {1, 2, 3};
  REQUIRE(ksp_family_create(3, 2, 2, sizes, elems, &f) == KSP_OK);
  CHECK(ksp_family_num_sets(f) == 2);
  ksp_family_free(f);

  CHECK(ksp_family_parse("p sp 3 1 3\ns 1 1 2\n", &f) == KSP_ERR_PARSE);
  CHECK(std::string(ksp_last_error()).find("line 2") != std::string::npos);
  CHECK(ksp_family_read("/nonexistent/x.sp", &f) == KSP_ERR_IO);
  CHECK(ksp_family_parse(nullptr, &f) == KSP_ERR_INVALID_ARGUMENT);
  CHECK(ksp_family_gen_random(6, 21, 3, 1, &f) == KSP_ERR_PRECONDITION);
  ksp_family_free(nullptr);
}

TEST_CASE("solve, certificate and trace") {
  ksp_family* f = nullptr;
  REQUIRE(ksp_family_parse("p sp 7 3 3\ns 1 2 3\ns 1 4 5\ns 2 6 7\n", &f) == KSP_OK);
  ksp_solve_options o;
  ksp_solve_options_init(&o);
  o.mode = KSP_MODE_SWAP;
  ksp_result* r = nullptr;
  REQUIRE(ksp_solve(f, &o, &r) == KSP_OK);
  CHECK(ksp_result_size(r) == 2);
  CHECK(ksp_result_members(r)[0] == 1);
  CHECK(ksp_result_start_size(r) == 1);
  CHECK(ksp_result_num_swaps(r) == 1);
  CHECK(ksp_result_budget_terminated(r) == 0);

  auto cert = temp_path("capi.cert");
  auto trace = temp_path("capi.trace");
  REQUIRE(ksp_result_write_certificate(r, cert.c_str()) == KSP_OK);
  REQUIRE(ksp_result_write_trace(r, trace.c_str()) == KSP_OK);
  int size = 0;
  CHECK(ksp_verify_certificate(f, cert.c_str(), &size) == KSP_OK);
  CHECK(size == 2);
  CHECK(ksp_verify_trace(f, trace.c_str(), cert.c_str()) == KSP_OK);

  put(cert, "1\n2\n");
  CHECK(ksp_verify_certificate(f, cert.c_str(), &size) == KSP_ERR_VERIFICATION);
  CHECK(ksp_verify_trace(f, trace.c_str(), cert.c_str()) == KSP_ERR_VERIFICATION);
  put(cert, "9\n");
  CHECK(ksp_verify_certificate(f, cert.c_str(), &size) == KSP_ERR_PARSE);
  ksp_result_free(r);

  o.r = 0;
  CHECK(ksp_solve(f, &o, &r) == KSP_ERR_PRECONDITION);
  o.r = 2;
  o.mode = static_cast<ksp_mode>(17);
  CHECK(ksp_solve(f, &o, &r) == KSP_ERR_INVALID_ARGUMENT);

  int opt = 0, finished = 0;
  CHECK(ksp_exact_size(f, 0.0, &opt, &finished) == KSP_OK);
  CHECK(opt == 2);
  CHECK(finished == 1);
  ksp_family_free(f);
}

TEST_CASE("reduction through the C API") {
  auto mcc = temp_path("k4.mcc");
  put(mcc, "p mcc 4 6 4\nv 1 0\nv 2 1\nv 3 2\nv 4 3\n"
           "e 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
  ksp_reduction* red = nullptr;
  REQUIRE(ksp_reduction_from_mcc(mcc.c_str(), &red) == KSP_OK);
  const ksp_family* f = ksp_reduction_family(red);
  CHECK(ksp_family_num_elements(f) == 57);
  CHECK(ksp_family_num_sets(f) == 37);
  CHECK(ksp_reduction_f0_size(red) == 18);

  ksp_solve_options o;
  ksp_solve_options_init(&o);
  o.mode = KSP_MODE_EXACT;
  ksp_result* r = nullptr;
  REQUIRE(ksp_solve(f, &o, &r) == KSP_OK);
  CHECK(ksp_result_size(r) == 19);
  int verts[4], count = 0;
  REQUIRE(ksp_reduction_extract(red, r, verts, &count) == KSP_OK);
  CHECK(count == 4);
  CHECK(verts[3] == 3);
  ksp_result_free(r);

  o.mode = KSP_MODE_GREEDY;
  REQUIRE(ksp_solve(f, &o, &r) == KSP_OK);
  if (ksp_result_size(r) < 19)
    CHECK(ksp_reduction_extract(red, r, verts, &count) == KSP_ERR_PRECONDITION);
  ksp_result_free(r);
  ksp_reduction_free(red);

  ksp_reduction_report rep;
  CHECK(ksp_check_reduction(mcc.c_str(), 0.0, &rep) == KSP_OK);
  CHECK(rep.cliques == 1);
  CHECK(rep.optimum == 19);
  CHECK(rep.perfect == 1);
}

TEST_CASE("bounded trees through the C API") {
  ksp_mgraph* g = nullptr;
  REQUIRE(ksp_mgraph_random(40, 2, 3, &g) == KSP_OK);
  ksp_tree* t = nullptr;
  REQUIRE(ksp_tree_find(g, &t) == KSP_OK);
  ksp_tree_report rep;
  REQUIRE(ksp_tree_report_get(t, &rep) == KSP_OK);
  CHECK(rep.checks_passed == 1);
  CHECK(rep.beta == 10);
  CHECK(rep.width <= rep.width_limit);
  auto cert = temp_path("tree.cert");
  REQUIRE(ksp_tree_write(t, cert.c_str()) == KSP_OK);
  CHECK(ksp_tree_verify(g, cert.c_str()) == KSP_OK);
  put(cert, "root 1\nvertices 1 2\ntree 1\nextra 1 1\n");
  CHECK(ksp_tree_verify(g, cert.c_str()) == KSP_ERR_VERIFICATION);
  ksp_tree_free(t);
  ksp_mgraph_free(g);
}

TEST_CASE("suggested parameters") {
  ksp_parameters p;
  REQUIRE(ksp_suggest_parameters(3, 1.0, 256, &p) == KSP_OK);
  CHECK(p.r == 64);
  CHECK(p.pw == 16);
  CHECK(ksp_suggest_parameters(3, 1.0, 256, nullptr) == KSP_ERR_INVALID_ARGUMENT);
}
