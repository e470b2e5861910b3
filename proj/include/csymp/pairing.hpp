#ifndef CSYMP_PAIRING_HPP
#define CSYMP_PAIRING_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace csymp {

/// A partition of the index set {0..2n-1} into two-element blocks.
struct PairPartition {
  std::vector<std::pair<int, int>> pairs;

  static PairPartition crosswise(int two_n) {
    PairPartition t;
    for (int i = 0; i < two_n / 2; ++i) t.pairs.push_back({i, two_n - 1 - i});
    return t;
  }

  void validate(int two_n) const {
    if (two_n % 2 != 0 || static_cast<int>(pairs.size()) != two_n / 2)
      throw precondition_error("partition size does not match the index set");
    std::vector<bool> used(static_cast<std::size_t>(two_n), false);
    for (auto [i, j] : pairs) {
      if (i == j || i < 0 || j < 0 || i >= two_n || j >= two_n)
        throw precondition_error("invalid index pair in partition");
      if (used[static_cast<std::size_t>(i)] || used[static_cast<std::size_t>(j)])
        throw precondition_error("repeated index in partition");
      used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = true;
    }
  }
};

namespace detail {
inline void require_sorted(const std::vector<long long>& a) {
  if (a.empty() || a.size() % 2 != 0) throw precondition_error("value list must have even positive length");
  if (!std::is_sorted(a.begin(), a.end())) throw precondition_error("values must be sorted non-decreasing");
}
}  // namespace detail

/// Finds a block of the partition whose sum dominates every crosswise sum
/// a_i + a_{2n-1-i}, by the recursive peeling argument: take the block
/// containing the last value outright when its partner sits in the upper
/// half, otherwise recurse on the remaining values and keep the larger of
/// the two candidates. Deterministic, but not canonical when several blocks
/// dominate.
inline std::pair<int, int> find_dominant_pair(const std::vector<long long>& a, const PairPartition& t) {
  detail::require_sorted(a);
  const int two_n = static_cast<int>(a.size());
  t.validate(two_n);

  // recursion works on positions into the current (sorted) sub-list; keep a
  // map back to original indices
  std::vector<int> live(static_cast<std::size_t>(two_n));
  for (int i = 0; i < two_n; ++i) live[static_cast<std::size_t>(i)] = i;
  std::vector<std::pair<int, int>> blocks = t.pairs;
  std::pair<int, int> best{-1, -1};
  long long best_sum = 0;
  bool have_best = false;

  while (!live.empty()) {
    int n = static_cast<int>(live.size()) / 2;
    int last = live.back();
    // block containing the current maximum
    std::pair<int, int> blk{-1, -1};
    for (const auto& p : blocks)
      if (p.first == last || p.second == last) {
        blk = p;
        break;
      }
    int partner = blk.first == last ? blk.second : blk.first;
    // position of the partner in the current sub-list
    int pos = static_cast<int>(std::find(live.begin(), live.end(), partner) - live.begin());
    long long blk_sum = a[static_cast<std::size_t>(blk.first)] + a[static_cast<std::size_t>(blk.second)];
    if (!have_best || blk_sum > best_sum) {
      best = blk;
      best_sum = blk_sum;
      have_best = true;
    }
    if (pos >= n - 1) break;  // partner in the upper half: this block dominates the rest
    // peel the block and recurse on the remaining 2n-2 values
    live.erase(live.begin() + pos);
    live.pop_back();
    blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                [&](const std::pair<int, int>& p) { return p == blk; }),
                 blocks.end());
  }
  return best;
}

enum class TransferResult { Transferred, NotApplicable };

/// When every block sum of the partition is bounded by N, so is every
/// crosswise sum; the bound transfer is re-verified before returning.
inline TransferResult prop_transfer(const std::vector<long long>& a, long long n_bound,
                                    const PairPartition& t) {
  detail::require_sorted(a);
  const int two_n = static_cast<int>(a.size());
  t.validate(two_n);
  for (auto [i, j] : t.pairs)
    if (a[static_cast<std::size_t>(i)] + a[static_cast<std::size_t>(j)] > n_bound)
      return TransferResult::NotApplicable;
  for (int i = 0; i < two_n / 2; ++i)
    if (a[static_cast<std::size_t>(i)] + a[static_cast<std::size_t>(two_n - 1 - i)] > n_bound)
      throw error("bound transfer failed; this contradicts the dominance property");
  return TransferResult::Transferred;
}

/// Exhaustive oracle over all (2n-1)!! pair partitions: is there one with
/// every block sum <= N? Guarded to 2n <= 12.
inline bool brute_force_check(const std::vector<long long>& a, long long n_bound) {
  detail::require_sorted(a);
  if (a.size() > 12) throw resource_error("brute force partition search is limited to 12 values");
  std::vector<bool> used(a.size(), false);
  auto rec = [&](auto&& self, std::size_t taken) -> bool {
    if (taken == a.size()) return true;
    std::size_t first = 0;
    while (used[first]) ++first;
    used[first] = true;
    for (std::size_t j = first + 1; j < a.size(); ++j) {
      if (used[j]) continue;
      if (a[first] + a[j] <= n_bound) {
        used[j] = true;
        if (self(self, taken + 2)) {
          used[j] = used[first] = false;
          return true;
        }
        used[j] = false;
      }
    }
    used[first] = false;
    return false;
  };
  return rec(rec, 0);
}

/// The crosswise partition realizes the optimum: a partition with all block
/// sums <= N exists iff the crosswise sums are all <= N.
inline bool crosswise_check(const std::vector<long long>& a, long long n_bound) {
  detail::require_sorted(a);
  const int two_n = static_cast<int>(a.size());
  for (int i = 0; i < two_n / 2; ++i)
    if (a[static_cast<std::size_t>(i)] + a[static_cast<std::size_t>(two_n - 1 - i)] > n_bound) return false;
  return true;
}

}  // namespace csymp

#endif
