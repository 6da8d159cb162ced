#include "doctest.h"
#include "qmat/shape_dsl.hpp"

using namespace qmat;
using cli::parse_shape_spec;
using support::SupportSet;

TEST_CASE("shape DSL accepts the documented grammar") {
  CHECK(parse_shape_spec("diag:3", std::nullopt, 5) == support::diagonal_prefix(5, 3));
  CHECK(parse_shape_spec("straight:4,3,2", std::nullopt, 5) ==
        support::shape(support::ShapeKind::straight, support::Partition({4, 3, 2}), 5));
  CHECK(parse_shape_spec("fano", std::nullopt, std::nullopt) == support::fano_support());
  CHECK(parse_shape_spec("fano", 7, 7) == support::fano_support());
  CHECK(parse_shape_spec("skew:5,5,4,3,1/2,2,1", std::nullopt, 5) ==
        support::shape(support::ShapeKind::skew, support::Partition({5, 5, 4, 3, 1}),
                       support::Partition({2, 2, 1}), 5));
  CHECK(parse_shape_spec("complement(diag:2)", std::nullopt, 2) ==
        support::complement(support::diagonal_prefix(2, 2)));
  CHECK(parse_shape_spec("explicit:[(1,1),(2,2)]", 3, 3) ==
        SupportSet::from_positions(3, 3, {{1, 1}, {2, 2}}));
  CHECK(parse_shape_spec("explicit:[]", 2, 3) == SupportSet(2, 3));
  CHECK(parse_shape_spec("graph:1-3,2-3", std::nullopt, std::nullopt) ==
        SupportSet::from_positions(2, 2, {{1, 2}, {2, 1}}));
  // rectangular diag
  SupportSet rect = parse_shape_spec("diag:2", 2, 4);
  CHECK(rect.m() == 2);
  CHECK(rect.n() == 4);
  CHECK(rect.forbidden_count() == 2);
}

TEST_CASE("shape DSL rejects bad input with positions") {
  try {
    parse_shape_spec("diag:x", std::nullopt, 4);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset == 5);
    CHECK(!e.expected.empty());
  }
  try {
    parse_shape_spec("straigt:1", std::nullopt, 4);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset == 0);
    CHECK(e.expected.size() >= 5);
  }
  CHECK_THROWS_AS(parse_shape_spec("diag:3junk", std::nullopt, 4), ParseError);
  CHECK_THROWS_AS(parse_shape_spec("fano", 6, 6), ParseError);
  CHECK_THROWS_AS(parse_shape_spec("diag:5", std::nullopt, 3), ParseError);
  CHECK_THROWS_AS(parse_shape_spec("complement(diag:1", std::nullopt, 3), ParseError);
  CHECK_THROWS_AS(parse_shape_spec("straight:1", std::nullopt, std::nullopt), ParseError);
  // apex vertex 3 is not adjacent to vertex 2
  CHECK_THROWS_AS(parse_shape_spec("graph:1-2,1-3", std::nullopt, std::nullopt), ParseError);
  CHECK_THROWS_AS(parse_shape_spec("explicit:[(1,1)", 2, 2), ParseError);
  CHECK_THROWS_AS(parse_shape_spec("skew:2,1/3", std::nullopt, 4), ParseError);
}
