#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "ksp/instances.hpp"
#include "ksp/solvers.hpp"

#ifndef KSP_GOLDEN_DIR
#error "KSP_GOLDEN_DIR must point at tests/golden"
#endif

using namespace ksp;

namespace {

std::string text_of(const SetFamily& f, const std::vector<std::string>& c = {}) {
  std::ostringstream ss;
  write_instance(ss, f, c);
  return ss.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SetFamily parse(const std::string& text) {
  std::istringstream ss(text);
  return read_instance(ss);
}

int parse_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("read E1") {
  auto f = parse("c example\np sp 7 4 3\ns 1 2 3\ns 1 4 5\ns 2 6 7\ns 4 5 6\n");
  CHECK(f == fixtures::e1());
  CHECK(text_of(f) == "p sp 7 4 3\ns 1 2 3\ns 1 4 5\ns 2 6 7\ns 4 5 6\n");
  auto one = parse("p sp 3 1 3\ns 1 2 3\n");
  CHECK(one.num_sets() == 1);
  // Sets are stored sorted even if written out of order.
  CHECK(parse("p sp 3 1 3\ns 3 1 2\n") == one);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("p sp 3 1 3\ns 1 1 2\n") == 2);
  CHECK(parse_error_line("p xx 3 1 3\n") == 1);
  CHECK(parse_error_line("p sp 3 1 3\ns 1 4\n") == 2);
  CHECK(parse_error_line("p sp 5 1 2\ns 1 2 3\n") == 2);
  CHECK(parse_error_line("p sp 3 2 3\ns 1 2\nc dup\ns 2 1\n") == 4);
  CHECK(parse_error_line("p sp 3 1 3\ns 1 x\n") == 2);
  CHECK(parse_error_line("p sp 3 2 3\ns 1 2\n") == 2);
  CHECK(parse_error_line("p sp 3 1 3\ns 1\ns 2\n") == 3);
  CHECK(parse_error_line("") == 0);
}

TEST_CASE("gen_random") {
  auto a = gen_random(7, 4, 3, 1);
  CHECK(a == gen_random(7, 4, 3, 1));
  CHECK(a.num_sets() == 4);
  for (const auto& s : a.sets()) CHECK(s.size() == 3);
  CHECK(text_of(a) == slurp(std::string(KSP_GOLDEN_DIR) + "/random_7_4_3_seed1.sp"));

  auto single = gen_random(3, 1, 3, 42);
  CHECK(single.sets() == std::vector<std::vector<ElementId>>{{1, 2, 3}});

  auto all = gen_random(6, 20, 3, 5);
  std::set<std::vector<ElementId>> distinct(all.sets().begin(), all.sets().end());
  CHECK(distinct.size() == 20);

  CHECK_THROWS_AS(gen_random(6, 21, 3, 5), PreconditionError);
  CHECK_THROWS_AS(gen_random(2, 1, 3, 5), PreconditionError);
}

TEST_CASE("gen_planted_3dm") {
  auto p0 = gen_planted_3dm(3, 0, 1);
  CHECK(p0.family.num_sets() == 3);
  CHECK(p0.planted == 3);
  CHECK(exact_max_packing(p0.family).size() == 3);

  auto p5 = gen_planted_3dm(3, 5, 2);
  CHECK(p5.family.num_sets() == 8);
  CHECK(exact_max_packing(p5.family).size() == 3);
  for (const auto& s : p5.family.sets()) {
    REQUIRE(s.size() == 3);
    CHECK((s[0] >= 1 && s[0] <= 3));
    CHECK((s[1] >= 4 && s[1] <= 6));
    CHECK((s[2] >= 7 && s[2] <= 9));
  }
  CHECK(text_of(gen_planted_3dm(4, 6, 3).family) ==
        slurp(std::string(KSP_GOLDEN_DIR) + "/planted_4_6_seed3.sp"));

  for (int m = 1; m <= 5; ++m)
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      auto p = gen_planted_3dm(m, std::min(3 * m, m * m * m - m), seed);
      CHECK(exact_max_packing(p.family).size() == m);
    }

  // 2^3 - 2 = 6 non-planted triples exist for m = 2.
  CHECK_NOTHROW(gen_planted_3dm(2, 6, 1));
  CHECK_THROWS_AS(gen_planted_3dm(2, 7, 1), PreconditionError);
  CHECK_THROWS_AS(gen_planted_3dm(0, 0, 1), PreconditionError);
}

TEST_CASE("round trips on generated instances") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto f = gen_random(9 + seed % 20, 1 + seed % 30, 2 + seed % 3, seed);
    CHECK(parse(text_of(f, {"seed " + std::to_string(seed)})) == f);
    const int m = 2 + seed % 7;
    auto p = gen_planted_3dm(m, std::min<int>(seed % 30, m * m * m - m), seed).family;
    CHECK(parse(text_of(p)) == p);
  }
}

TEST_CASE("certificates and traces") {
  SetFamily trap(7, 3, {{1, 2, 3}, {1, 4, 5}, {2, 6, 7}});
  SolverConfig cfg;
  cfg.mode = SolverMode::kSwapBruteforce;
  auto res = local_search(trap, cfg);

  std::stringstream cert;
  write_certificate(cert, res.packing);
  CHECK(cert.str() == "2\n3\n");
  CHECK(read_certificate(cert, trap) == res.packing);

  std::stringstream tr;
  write_trace(tr, Trace{res.start, res.trace});
  CHECK(tr.str() == "start 1\nswap add 2 3 remove 1\n");
  auto back = read_trace(tr, trap);
  CHECK(replay_trace(trap, back.start, back.swaps) == res.packing);

  std::stringstream bad("4\n");
  CHECK_THROWS_AS(read_certificate(bad, trap), ParseError);
  std::stringstream twice("1\n1\n");
  CHECK_THROWS_AS(read_certificate(twice, trap), ParseError);
}
