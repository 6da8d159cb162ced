#include <set>

#include "doctest.h"
#include "qmat/gf.hpp"

using namespace qmat;
using gf::Elem;

TEST_CASE("make_field recognizes prime powers") {
  auto f9 = gf::make_field(9);
  CHECK(f9->p() == 3);
  CHECK(f9->e() == 2);
  auto f7 = gf::make_field(7);
  CHECK(f7->p() == 7);
  CHECK(f7->e() == 1);
  CHECK_THROWS_AS(gf::make_field(6), NotAPrimePower);
  CHECK_THROWS_AS(gf::make_field(12), NotAPrimePower);
  CHECK_THROWS_AS(gf::make_field(1), OutOfRange);
}

TEST_CASE("modulus is the lexicographically least monic irreducible") {
  // GF(4): x^2 + x + 1 is the only degree-2 irreducible over GF(2)
  auto f4 = gf::make_field(4);
  CHECK(f4->modulus() == std::vector<Elem>{1, 1, 1});
  // GF(9): x^2 + 1 beats x^2 + x + 2 etc. in encoded order
  auto f9 = gf::make_field(9);
  CHECK(f9->modulus() == std::vector<Elem>{1, 0, 1});
  // deterministic across constructions
  CHECK(gf::make_field(27)->modulus() == gf::make_field(27)->modulus());
}

TEST_CASE("basic arithmetic examples") {
  auto f5 = gf::make_field(5);
  CHECK(f5->mul(3, 4) == 2);
  auto f4 = gf::make_field(4);
  for (Elem x = 0; x < 4; ++x) CHECK(f4->add(x, x) == 0);  // characteristic 2
  auto f7 = gf::make_field(7);
  CHECK(f7->inv(3) == 5);
  CHECK_THROWS_AS(f7->inv(0), DivisionByZero);
}

static void check_field_axioms(std::uint32_t q) {
  auto f = gf::make_field(q);
  for (Elem x = 0; x < q; ++x) {
    CHECK(f->add(x, 0) == x);
    CHECK(f->mul(x, 1) == x);
    CHECK(f->add(x, f->neg(x)) == 0);
    if (x != 0) CHECK(f->mul(x, f->inv(x)) == 1);
    for (Elem y = 0; y < q; ++y) {
      CHECK(f->add(x, y) == f->add(y, x));
      CHECK(f->mul(x, y) == f->mul(y, x));
      for (Elem z = 0; z < q; ++z) {
        CHECK(f->add(f->add(x, y), z) == f->add(x, f->add(y, z)));
        CHECK(f->mul(f->mul(x, y), z) == f->mul(x, f->mul(y, z)));
        CHECK(f->mul(x, f->add(y, z)) == f->add(f->mul(x, y), f->mul(x, z)));
      }
    }
  }
}

TEST_CASE("field axioms hold exhaustively for q <= 16") {
  for (std::uint32_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) check_field_axioms(q);
}

TEST_CASE("larger field without tables still behaves") {
  auto f = gf::make_field(521);  // prime above the table limit
  CHECK_FALSE(f->has_tables());
  CHECK(f->mul(520, 520) == 1);  // (-1)^2
  CHECK(f->mul(f->inv(17), 17) == 1);
  auto f512 = gf::make_field(512);  // 2^9, polynomial arithmetic path
  CHECK(f512->p() == 2);
  CHECK(f512->e() == 9);
  for (Elem x : {Elem(1), Elem(77), Elem(333)}) CHECK(f512->add(x, x) == 0);
  CHECK(f512->mul(f512->inv(300), 300) == 1);
}

TEST_CASE("legendre symbol examples") {
  auto f5 = gf::make_field(5);
  CHECK(f5->legendre(4) == gf::kPlus);  // 4 = 2^2

  // GF(3): brute-force square table says squares = {1}
  auto f3 = gf::make_field(3);
  std::set<Elem> squares3;
  for (Elem y = 1; y < 3; ++y) squares3.insert(f3->mul(y, y));
  CHECK(squares3 == std::set<Elem>{1});
  CHECK(f3->legendre(2) == gf::kMinus);

  // GF(9): any nonzero z with z^4 = -1 is a nonsquare (brute-force table)
  auto f9 = gf::make_field(9);
  std::set<Elem> squares9;
  for (Elem y = 1; y < 9; ++y) squares9.insert(f9->mul(y, y));
  Elem minus_one = f9->neg(1);
  int found = 0;
  for (Elem z = 1; z < 9; ++z)
    if (f9->pow(z, 4) == minus_one) {
      ++found;
      CHECK(squares9.count(z) == 0);
      CHECK(f9->legendre(z) == gf::kMinus);
    }
  CHECK(found > 0);

  CHECK_THROWS_AS(gf::make_field(4)->legendre(3), EvenCharacteristic);
  CHECK_THROWS_AS(f5->legendre(0), ZeroArgument);
}

TEST_CASE("legendre multiplicativity and square counts, exhaustive for q <= 49") {
  for (std::uint32_t q : {3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49}) {
    auto f = gf::make_field(q);
    int plus = 0;
    for (Elem x = 1; x < q; ++x) {
      if (f->legendre(x) == gf::kPlus) ++plus;
      CHECK(f->legendre(x) * f->legendre(f->inv(x)) == gf::kPlus);
      for (Elem y = 1; y < q; ++y)
        CHECK(f->legendre(f->mul(x, y)) == f->legendre(x) * f->legendre(y));
    }
    CHECK(plus == int((q - 1) / 2));
    CHECK(f->legendre(f->least_nonsquare()) == gf::kMinus);
  }
}

TEST_CASE("psi(-1) shortcut matches the field computation") {
  for (long q : {3L, 5L, 7L, 9L, 11L, 13L, 25L, 27L}) {
    auto f = gf::make_field(std::uint32_t(q));
    CHECK(gf::psi_minus_one(q) == f->legendre(f->neg(1)));
  }
}

TEST_CASE("character group multiplication") {
  CHECK(gf::kPlus * gf::kPlus == gf::kPlus);
  CHECK(gf::kPlus * gf::kMinus == gf::kMinus);
  CHECK(gf::kMinus * gf::kMinus == gf::kPlus);
}
