#include <doctest.h>

#include "csymp/algebra.hpp"
#include "oracles.hpp"

#include <random>

using namespace csymp;

namespace {

AlgebraPtr three_odd() {
  return FreeGCA::make({{"v1", 3}, {"v2", 3}, {"v3", 7}});
}

AlgebraPtr t_and_odd() {
  // declared t-first on purpose: the slice-order golden values below use it
  return FreeGCA::make({{"t", 2}, {"v1", 3}, {"v2", 3}, {"v3", 7}});
}

}  // namespace

TEST_CASE("odd generators anticommute and square to zero") {
  auto alg = three_odd();
  Element v1 = Element::generator(alg, 0);
  Element v2 = Element::generator(alg, 1);
  CHECK(v1 * v2 == -(v2 * v1));
  CHECK((v1 * v1).is_zero());
  CHECK((v1 * v2).degree() == 6);
}

TEST_CASE("product expansion against the naive multiplier") {
  auto alg = t_and_odd();
  Element e = parse_element(alg, "v1*v2*t + t^4");
  Element t2 = parse_element(alg, "t^2");
  Element got = e * t2;
  CHECK(got == parse_element(alg, "v1*v2*t^3 + t^6"));
  CHECK(got == oracles::naive_multiply(e, t2));
}

TEST_CASE("multiplication properties on random homogeneous elements") {
  auto alg = FreeGCA::make({{"t", 2}, {"v1", 3}, {"v2", 3}, {"v3", 5}, {"v4", 7}});
  std::mt19937_64 rng(12345);
  for (int iter = 0; iter < 200; ++iter) {
    long long da = 2 + static_cast<long long>(rng() % 9);
    long long db = 2 + static_cast<long long>(rng() % 9);
    Element a = oracles::random_homogeneous(rng, alg, da);
    Element b = oracles::random_homogeneous(rng, alg, db);
    // graded commutativity
    Element ab = a * b;
    Element ba = b * a;
    if (da % 2 == 1 && db % 2 == 1)
      CHECK(ab == -ba);
    else
      CHECK(ab == ba);
    CHECK(ab == oracles::naive_multiply(a, b));
    if (!ab.is_zero()) CHECK(*ab.degree() == da + db);
    // associativity
    Element c = oracles::random_homogeneous(rng, alg, 2 + static_cast<long long>(rng() % 5));
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("degree slices are lex-descending and match the series count") {
  auto alg = t_and_odd();

  auto s3 = enumerate_degree_basis(FreeGCA::make({{"v1", 3}, {"v2", 3}}), 3);
  REQUIRE(s3.dim() == 2);
  CHECK(s3.basis[0].e == std::vector<std::uint32_t>{1, 0});
  CHECK(s3.basis[1].e == std::vector<std::uint32_t>{0, 1});

  auto alg_tv = FreeGCA::make({{"t", 2}, {"v1", 3}});
  auto s5 = enumerate_degree_basis(alg_tv, 5);
  REQUIRE(s5.dim() == 1);
  CHECK(format_monomial(*alg_tv, s5.basis[0]) == "t*v1");

  auto s12 = enumerate_degree_basis(alg, 12);
  REQUIRE(s12.dim() == 4);
  CHECK(format_monomial(*alg, s12.basis[0]) == "t^6");
  CHECK(format_monomial(*alg, s12.basis[1]) == "t^3*v1*v2");
  CHECK(format_monomial(*alg, s12.basis[2]) == "t*v1*v3");
  CHECK(format_monomial(*alg, s12.basis[3]) == "t*v2*v3");

  for (long long n = 0; n <= 30; ++n) {
    auto s = enumerate_degree_basis(alg, n);
    CHECK(static_cast<long long>(s.dim()) == oracles::series_coefficient(alg, n));
    CHECK(std::is_sorted(s.basis.begin(), s.basis.end(),
                         [](const Monomial& a, const Monomial& b) { return MonoLexDesc{}(a, b); }));
    // determinism
    auto again = enumerate_degree_basis(alg, n);
    CHECK(again.basis == s.basis);
  }
}

TEST_CASE("coordinates round-trip with reconstruction") {
  auto alg = t_and_odd();
  auto s12 = enumerate_degree_basis(alg, 12);

  auto v = coordinates(parse_element(alg, "t^6"), s12);
  CHECK(v == std::vector<Rat>{1, 0, 0, 0});
  v = coordinates(parse_element(alg, "v1*v2*t^3 + t^6"), s12);
  CHECK(v == std::vector<Rat>{1, 1, 0, 0});
  CHECK(coordinates(Element::zero(alg), s12) == std::vector<Rat>(4, Rat(0)));

  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 50; ++iter) {
    Element e = oracles::random_homogeneous(rng, alg, 12);
    CHECK(from_coordinates(alg, s12, coordinates(e, s12)) == e);
  }

  CHECK_THROWS_AS(coordinates(parse_element(alg, "t"), s12), degree_mismatch_error);
  CHECK_THROWS_AS(coordinates(parse_element(alg, "t + t^2"), s12), degree_mismatch_error);
}

TEST_CASE("element text syntax") {
  // odd-first declaration, as the catalog files use
  auto alg = FreeGCA::make({{"v1", 3}, {"v2", 3}, {"v3", 7}, {"t", 2}});
  CHECK(parse_element(alg, "-3/2*t^10").str() == "-3/2*t^10");
  CHECK(parse_element(alg, " v1 * v2 * t + t ^ 4 ").str() == "v1*v2*t + t^4");
  CHECK(parse_element(alg, "v2*v1") == -parse_element(alg, "v1*v2"));
  CHECK(parse_element(alg, "v1*v1").is_zero());
  CHECK(parse_element(alg, "0").is_zero());
  CHECK(parse_element(alg, "t - t").is_zero());
  CHECK(parse_element(alg, "2*t + 3*t").str() == "5*t");
  CHECK_THROWS_AS(parse_element(alg, "w1"), parse_error);
  CHECK_THROWS_AS(parse_element(alg, "t^"), parse_error);
  CHECK_THROWS_AS(parse_element(alg, "t*"), parse_error);
}

TEST_CASE("algebra mismatch is rejected") {
  auto a = three_odd();
  auto b = t_and_odd();
  CHECK_THROWS_AS(Element::generator(a, 0) * Element::generator(b, 0), algebra_mismatch_error);
}
