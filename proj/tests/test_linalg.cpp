#include <doctest.h>

#include "csymp/linalg.hpp"
#include "oracles.hpp"

#include <random>

using namespace csymp;

namespace {

SparseMat from_dense(const std::vector<std::vector<Rat>>& d) {
  SparseMat m(static_cast<int>(d.size()), d.empty() ? 0 : static_cast<int>(d[0].size()));
  for (std::size_t r = 0; r < d.size(); ++r)
    for (std::size_t c = 0; c < d[r].size(); ++c) m.set(static_cast<int>(r), static_cast<int>(c), d[r][c]);
  return m;
}

std::vector<std::vector<Rat>> random_dense(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::vector<std::vector<Rat>> d(static_cast<std::size_t>(rows),
                                  std::vector<Rat>(static_cast<std::size_t>(cols), Rat(0)));
  for (auto& row : d)
    for (auto& x : row)
      if (rng() % 3 != 0) x = Rat(coeff(rng), 1 + static_cast<int>(rng() % 3));
  return d;
}

}  // namespace

TEST_CASE("rank agrees with naive rational elimination") {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 120; ++iter) {
    int rows = 1 + static_cast<int>(rng() % 8);
    int cols = 1 + static_cast<int>(rng() % 8);
    auto d = random_dense(rng, rows, cols);
    CHECK(rank(from_dense(d)) == oracles::naive_rank(d));
  }
}

TEST_CASE("kernel vectors annihilate the matrix") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 80; ++iter) {
    int rows = 1 + static_cast<int>(rng() % 6);
    int cols = 1 + static_cast<int>(rng() % 7);
    auto d = random_dense(rng, rows, cols);
    SparseMat m = from_dense(d);
    auto basis = kernel_basis(m);
    CHECK(static_cast<int>(basis.size()) == cols - rank(m));
    for (const auto& v : basis)
      for (int r = 0; r < rows; ++r) {
        Rat acc(0);
        for (int c = 0; c < cols; ++c) acc += d[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] * v[static_cast<std::size_t>(c)];
        CHECK(acc == 0);
      }
  }
}

TEST_CASE("solve finds exact solutions and detects inconsistency") {
  std::mt19937_64 rng(31);
  int solved = 0, unsolved = 0;
  for (int iter = 0; iter < 120; ++iter) {
    int rows = 1 + static_cast<int>(rng() % 6);
    int cols = 1 + static_cast<int>(rng() % 6);
    auto d = random_dense(rng, rows, cols);
    SparseMat m = from_dense(d);
    std::vector<Rat> b(static_cast<std::size_t>(rows), Rat(0));
    for (auto& x : b) x = Rat(static_cast<int>(rng() % 7) - 3);
    auto x = solve(m, b);
    if (x) {
      ++solved;
      for (int r = 0; r < rows; ++r) {
        Rat acc(0);
        for (int c = 0; c < cols; ++c) acc += d[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] * (*x)[static_cast<std::size_t>(c)];
        CHECK(acc == b[static_cast<std::size_t>(r)]);
      }
    } else {
      ++unsolved;
      // inconsistency certificate: the augmented matrix gains rank
      SparseMat aug(rows, cols + 1);
      for (int r = 0; r < rows; ++r) {
        aug.row(r) = m.row(r);
        if (b[static_cast<std::size_t>(r)] != 0) aug.row(r).push_back({cols, b[static_cast<std::size_t>(r)]});
      }
      CHECK(rank(aug) == rank(m) + 1);
    }
  }
  CHECK(solved > 0);
  CHECK(unsolved > 0);
}

TEST_CASE("rref is canonical under row scrambling") {
  std::mt19937_64 rng(55);
  for (int iter = 0; iter < 40; ++iter) {
    int rows = 2 + static_cast<int>(rng() % 5);
    int cols = 2 + static_cast<int>(rng() % 5);
    auto d = random_dense(rng, rows, cols);
    auto r1 = rref(from_dense(d));
    // scale rows and shuffle
    auto d2 = d;
    std::shuffle(d2.begin(), d2.end(), rng);
    for (auto& row : d2)
      for (auto& x : row) x *= Rat(3, 2);
    auto r2 = rref(from_dense(d2));
    CHECK(r1.pivot_cols == r2.pivot_cols);
    CHECK(r1.rows == r2.rows);
  }
}
