#include <doctest.h>

#include <cmath>
#include <limits>

#include "biiso/io.hpp"
#include "biiso/lattice.hpp"
#include "biiso/suite.hpp"

using namespace biiso;

namespace {

std::string data(const char* name) { return std::string(BIISO_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("complex numbers and matrices") {
  CHECK(complex_from_json(json::parse("[1.5, -2]")) == cd(1.5, -2));
  CHECK(complex_from_json(json::parse("3")) == cd(3, 0));
  CHECK_THROWS_AS(complex_from_json(json::parse("[1, 2, 3]")), InputError);
  CHECK_THROWS_AS(complex_from_json(json::parse("\"x\"")), InputError);
  std::mt19937 rng(1);
  const CMat u = random_unitary(rng, 3);
  CHECK(op_norm(matrix_from_json(matrix_to_json(u)) - u) == 0.0);
  CHECK_THROWS_AS(matrix_from_json(json::parse("[[[1,0]],[[1,0],[2,0]]]")), InputError);
}

TEST_CASE("symbols round trip") {
  const OpSymbol s = section6_symbol(4);
  const OpSymbol t = symbol_from_json(symbol_to_json(s));
  for (cd z : {cd(0.0), cd(0.3, -0.4), cd(-0.7, 0.1)}) CHECK(op_norm(s.eval(z) - t.eval(z)) <= 1e-15);
  const OpSymbol b = symbol_from_json(read_json_file(data("theta_blaschke.json")));
  CHECK(b.dim() == 1);
  CHECK(std::abs(b.eval(0.5)(0, 0)) <= 1e-15);
  CHECK_THROWS_AS(symbol_from_json(json::parse(R"({"dim": 2, "entries": []})")), InputError);
  CHECK_THROWS_AS(
      symbol_from_json(json::parse(R"({"dim": 1, "entries": [{"poly": [[1,0]], "blaschke": {"zeros": [[2,0]]}}]})")),
      InputError);
}

TEST_CASE("pairs round trip") {
  const BCLPair b = bcl_from_json(read_json_file(data("pair_flip.json")));
  CHECK(b.dim() == 2);
  CHECK(b.dim_e == 1);
  const BCLPair c = bcl_from_json(bcl_to_json(b));
  CHECK(op_norm(c.u - b.u) == 0.0);
  CHECK(op_norm(c.p - b.p) == 0.0);
  const BCLPair z = zset_to_bcl(ZSet::multiples(2), -4, 3);
  const BCLPair zz = bcl_from_json(bcl_to_json(z));
  CHECK(zz.interior_mask == z.interior_mask);
  CHECK_THROWS_AS(bcl_from_json(json::parse(R"({"dim": 1, "U": [[[2,0]]], "P": [1]})")), InputError);
  CHECK_THROWS_AS(bcl_from_json(json::parse(R"({"dim": 1, "U": [[[1,0]]], "P": [2]})")), InputError);
}

TEST_CASE("sets and staircases round trip") {
  std::mt19937 rng(suite_seed());
  for (int r = 0; r < 30; ++r) {
    const ZSet a = random_zset(rng);
    CHECK(same_set(zset_from_json(zset_to_json(a)), a));
    const Staircase s = zset_to_staircase(a);
    const ZSet na = normalize(a);
    const json j = staircase_to_json(s, na.core_lo - 3, na.core_hi + 3);
    CHECK(same_staircase(staircase_from_json(j), s));
  }
  const ZSet a = zset_from_json(read_json_file(data("zset_a.json")));
  CHECK(a.contains(0));
  CHECK_FALSE(a.contains(1));
  CHECK(a.contains(6));
  CHECK_FALSE(a.contains(8));
  CHECK_THROWS_AS(zset_from_json(read_json_file(data("zset_bad.json"))), InputError);
  const json sj = staircase_to_json(zset_to_staircase(ZSet::multiples(2)), 0, 3);
  CHECK(sj.at("steps") == "VHVH");
  CHECK(sj.at("left") == "periodic:VH");
}

TEST_CASE("bi-isometries round trip") {
  const BiIsometry w = biisometry_from_bcl(bcl_from_json(read_json_file(data("pair_flip.json"))), 6);
  const BiIsometry v = biisometry_from_json(biisometry_to_json(w));
  CHECK(v.interior == w.interior);
  CHECK(op_norm(v.w0.matrix - w.w0.matrix) == 0.0);
  CHECK(op_norm(v.w1.matrix - w.w1.matrix) == 0.0);
  Window in;
  const WindowedOp op = operator_from_json(read_json_file(data("op_shift_plus_unitary.json")), &in);
  CHECK(op.domain.size() == 12);
  CHECK(in.size() == 10);
}

TEST_CASE("files") {
  CHECK_THROWS_AS(read_json_file(data("missing.json")), InputError);
  CHECK_THROWS_AS(read_json_file(data("bad_json.json")), InputError);
}

TEST_CASE("report format") {
  json j = {{"b", 1.0 / 3.0}, {"a", {1, 2, 3}}, {"c", {{"y", "s"}, {"x", std::numeric_limits<double>::quiet_NaN()}}}};
  const std::string out = dump_report(j);
  CHECK(out == "{\n  \"a\": [1, 2, 3],\n  \"b\": 0.333333333333,\n  \"c\": {\n    \"x\": null,\n    \"y\": \"s\"\n  }\n}\n");
  CHECK(dump_report(j) == out);
  CHECK(dump_report(json::object()) == "{}\n");
}
