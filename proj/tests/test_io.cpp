#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "grpiso/io.hpp"

using namespace grpiso;

TEST_CASE("spec round trip") {
  ClassSGroupSpec spec;
  spec.abelian_orders = {3, 9};
  spec.m = 2;
  spec.action = {{2, 0}, {0, 8}};
  spec.scramble_seed = 42;

  std::ostringstream out;
  write_spec(out, spec);
  std::istringstream in(out.str());
  ClassSGroupSpec back = read_spec(in);
  CHECK(back.abelian_orders == spec.abelian_orders);
  CHECK(back.m == spec.m);
  CHECK(back.action == spec.action);
  CHECK(back.scramble_seed == spec.scramble_seed);
}

TEST_CASE("spec parsing: comments, blanks, defaults, errors") {
  std::istringstream ok(
      "# a comment\n"
      "abelian = 7\n"
      "\n"
      "m = 3  # trailing comment\n"
      "action = 2\n");
  ClassSGroupSpec spec = read_spec(ok);
  CHECK(spec.abelian_orders == std::vector<u64>{7});
  CHECK(spec.m == 3);
  CHECK(spec.scramble_seed == 0);

  std::istringstream missing("abelian = 7\nm = 3\n");
  CHECK_THROWS_AS(read_spec(missing), std::invalid_argument);
  std::istringstream badkey("abelian = 7\nm = 3\naction = 2\nbogus = 1\n");
  CHECK_THROWS_AS(read_spec(badkey), std::invalid_argument);
  std::istringstream badint("abelian = 7x\nm = 3\naction = 2\n");
  CHECK_THROWS_AS(read_spec(badint), std::invalid_argument);
  // validate() runs: 2 is no automorphism order dividing 3 on Z_7... it is;
  // but gcd violation must throw
  std::istringstream badgcd("abelian = 2\nm = 2\naction = 1\n");
  CHECK_THROWS_AS(read_spec(badgcd), std::invalid_argument);
}

TEST_CASE("table parsing") {
  std::istringstream ok("2\n0 1\n1 0\n");
  auto t = read_table(ok);
  CHECK(t == std::vector<std::vector<std::size_t>>{{0, 1}, {1, 0}});

  std::istringstream shortrow("2\n0 1\n1\n");
  CHECK_THROWS_AS(read_table(shortrow), std::invalid_argument);
  std::istringstream truncated("3\n0 1 2\n");
  CHECK_THROWS_AS(read_table(truncated), std::invalid_argument);
}

TEST_CASE("matrix round trip and multi-matrix files") {
  const FiniteField& f5 = splitting_field(5, 1);
  Matrix m = Matrix::from_residues(f5, {{1, 2}, {3, 4}});
  std::ostringstream out;
  write_matrix(out, m);
  write_matrix(out, Matrix::identity(f5, 3));

  std::istringstream in(out.str());
  Matrix back = read_matrix(in);
  CHECK(back == m);
  Matrix second = read_matrix(in);
  CHECK(second.dim() == 3);
  CHECK(second.is_identity());

  std::istringstream nonprime("4 1\n1\n");
  CHECK_THROWS_AS(read_matrix(nonprime), std::invalid_argument);
  std::istringstream badrow("5 2\n1 2 3\n0 1\n");
  CHECK_THROWS_AS(read_matrix(badrow), std::invalid_argument);
}

TEST_CASE("set discrete log file format") {
  std::istringstream in(
      "# one GF(7) block, one GF(4) block\n"
      "7 1\n"
      "2 4\n"
      "4 2\n"
      "2 2\n"
      "0,1 1,1\n"
      "1,1 0,1\n");
  auto [s_list, t_list] = read_setdlog(in);
  REQUIRE(s_list.size() == 2);
  REQUIRE(t_list.size() == 2);
  CHECK(s_list[0].elems.size() == 2);
  CHECK(s_list[0].field->size() == 7);
  CHECK(s_list[1].field->size() == 4);
  // elements are sorted multisets, so S and T of block 0 coincide
  CHECK(s_list[0].elems == t_list[0].elems);
  CHECK(s_list[1].elems == t_list[1].elems);
  for (const FFElem& e : s_list[1].elems) CHECK(elem_to_text(e).size() == 3);

  std::istringstream truncated("7 1\n2 4\n");
  CHECK_THROWS_AS(read_setdlog(truncated), std::invalid_argument);
  std::istringstream toobig("7 1\n0,1 4\n4 2\n");
  CHECK_THROWS_AS(read_setdlog(toobig), std::invalid_argument);
  std::istringstream zero("7 1\n0\n1\n");
  CHECK_THROWS_AS(read_setdlog(zero), std::invalid_argument);
}
