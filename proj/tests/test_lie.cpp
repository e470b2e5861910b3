#include <doctest.h>

#include "csymp/lie.hpp"

using namespace csymp;

TEST_CASE("rational types") {
  CHECK(rational_type({LieFamily::C, 5}).degrees() == std::vector<long long>{3, 7, 11, 15, 19});
  CHECK(rational_type({LieFamily::E, 7}).degrees() ==
        std::vector<long long>{3, 11, 15, 19, 23, 27, 35});
  CHECK(rational_type({LieFamily::D, 3}).degrees() == std::vector<long long>{3, 5, 7});
  CHECK(rational_type({LieFamily::A, 4}).degrees() == std::vector<long long>{3, 5, 7, 9});
  CHECK(rational_type({LieFamily::G, 2}).degrees() == std::vector<long long>{3, 11});
  CHECK_THROWS_AS(rational_type({LieFamily::E, 9}), precondition_error);
  CHECK_THROWS_AS(rational_type({LieFamily::D, 2}), precondition_error);
}

TEST_CASE("classification over all small ranks") {
  CHECK(classify({LieFamily::C, 5}));
  CHECK(classify({LieFamily::E, 7}));
  CHECK_FALSE(classify({LieFamily::E, 6}));
  CHECK_FALSE(classify({LieFamily::E, 8}));
  CHECK_FALSE(classify({LieFamily::G, 2}));
  CHECK_FALSE(classify({LieFamily::F, 4}));
  CHECK_FALSE(classify({LieFamily::A, 3}));
  CHECK_THROWS_AS(classify({LieFamily::A, 1}), precondition_error);

  // closed form: B/C with odd rank, or the rank-7 exceptional type
  for (auto fam : {LieFamily::A, LieFamily::B, LieFamily::C, LieFamily::D}) {
    int lo = fam == LieFamily::D ? 3 : 2;
    for (int r = lo; r <= 15; ++r) {
      bool expected = (fam == LieFamily::B || fam == LieFamily::C) && r % 2 == 1;
      CHECK(classify({fam, r}) == expected);
    }
  }
  for (int r : {6, 7, 8}) CHECK(classify({LieFamily::E, r}) == (r == 7));

  // the three inequalities behind the rank-7 exceptional verdict
  auto e7 = rational_type({LieFamily::E, 7});
  CHECK(e7[0] + e7[5] < e7[6]);  // 3 + 27 < 35
  CHECK(e7[1] + e7[4] < e7[6]);  // 11 + 23 < 35
  CHECK(e7[2] + e7[3] < e7[6]);  // 15 + 19 < 35
}

TEST_CASE("type parsing") {
  CHECK(parse_lie_type("C5").str() == "C5");
  CHECK(parse_lie_type("e7").str() == "E7");
  CHECK_THROWS_AS(parse_lie_type("X3"), parse_error);
  CHECK_THROWS_AS(parse_lie_type("B"), parse_error);
}
