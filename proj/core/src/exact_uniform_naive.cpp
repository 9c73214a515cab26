#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "exact_internal.h"
#include "nullcount/combinatorics.h"
#include "nullcount/exact.h"

namespace nullcount {

namespace {

// Multiset of value regions: final signature over the active relations, and
// how many domain values currently carry it. Kept sorted for memoization.
using Regions = std::vector<std::pair<std::uint32_t, int>>;

Regions normalize(std::map<std::uint32_t, int> by_sig) {
  Regions r;
  for (const auto& [sig, size] : by_sig) {
    if (size > 0) r.push_back({sig, size});
  }
  return r;
}

struct BlockSum {
  // Null blocks in processing order: signature over active relations, size.
  std::vector<std::pair<std::uint32_t, int>> blocks;
  // Signatures a value must never reach (one per violated singleton).
  std::vector<std::uint32_t> forbidden;
  std::map<std::pair<std::size_t, Regions>, BigCount> memo;

  bool allowed(std::uint32_t sig) const {
    for (std::uint32_t f : forbidden) {
      if ((sig & f) == f) return false;
    }
    return true;
  }

  // Sum over all ways to map the remaining blocks' nulls to values such
  // that no value's final signature covers a forbidden set. A block of n
  // equal nulls choosing k_r values from each region contributes the
  // binomials times surjections(n, sum k_r); chosen values move to the
  // merged signature region.
  BigCount run(std::size_t idx, const Regions& regions) {
    if (idx == blocks.size()) return 1;
    auto key = std::make_pair(idx, regions);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    auto [bsig, n] = blocks[idx];
    BigCount total = 0;
    std::vector<int> take(regions.size(), 0);
    // Depth-first over per-region take counts.
    auto rec = [&](auto&& self, std::size_t r, int taken, BigCount weight) -> void {
      if (r == regions.size()) {
        if (taken == 0) return;  // every null needs a value
        BigCount w = weight * surjections(static_cast<unsigned long>(n),
                                          static_cast<unsigned long>(taken));
        if (w == 0) return;
        std::map<std::uint32_t, int> merged;
        for (std::size_t i = 0; i < regions.size(); ++i) {
          merged[regions[i].first] += regions[i].second - take[i];
          if (take[i] > 0) merged[regions[i].first | bsig] += take[i];
        }
        total += w * run(idx + 1, normalize(std::move(merged)));
        return;
      }
      self(self, r + 1, taken, weight);
      if (allowed(regions[r].first | bsig)) {
        for (int k = 1; k <= regions[r].second && k <= n - taken; ++k) {
          take[r] = k;
          self(self, r + 1, taken + k,
               weight * binomial(static_cast<unsigned long>(regions[r].second),
                                 static_cast<unsigned long>(k)));
        }
        take[r] = 0;
      }
    };
    rec(rec, 0, 0, 1);
    memo.emplace(std::move(key), total);
    return total;
  }
};

}  // namespace

BigCount count_val_uniform_naive(const IncompleteDatabase& db,
                                 const ConjunctiveQuery& q, const Caps& caps) {
  if (!db.uniform()) fail(errc::setting, "database is not uniform");
  detail::require_algorithm(q, {TableKind::naive, DomainKind::uniform},
                            {ProblemKind::valuations}, "uniform-naive-ie");

  BigCount shortcut;
  if (detail::ground_shortcut(db, q, &shortcut)) return shortcut;
  if (detail::atoms_unmatchable(db, q)) return 0;

  const Domain& dom = db.uniform_domain();
  unsigned long d = dom.size();

  // Occurrence counts decide which columns matter: a variable used once
  // matches anything, so its column can be dropped.
  std::map<std::string, int> occurrences;
  for (const Atom& a : q.atoms) {
    for (const QueryTerm& t : a.args) ++occurrences[t.name];
  }

  // Each surviving atom keeps exactly one column; atoms whose columns all
  // vanish only require a nonempty relation.
  std::map<std::string, std::vector<std::pair<std::string, std::size_t>>>
      groups;
  for (const Atom& a : q.atoms) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (occurrences[a.args[i].name] >= 2) kept.push_back(i);
    }
    if (kept.empty()) {
      if (db.facts_of(a.relation).empty()) return 0;
      continue;
    }
    if (kept.size() != 1)
      fail(errc::verification,
           "atom " + a.relation + " kept more than one shared column");
    groups[a.args[kept[0]].name].push_back({a.relation, kept[0]});
  }
  if (groups.empty()) return total_valuations(db);

  // Projections of the kept columns.
  std::vector<std::string> rel_names;
  std::map<std::string, int> rel_index;
  std::vector<std::set<std::string>> ground_proj;
  std::vector<std::set<std::string>> null_proj;
  std::vector<std::uint32_t> singleton;  // relation mask per group
  for (const auto& [var, members] : groups) {
    std::uint32_t mask = 0;
    for (const auto& [rel, col] : members) {
      int idx;
      auto it = rel_index.find(rel);
      if (it == rel_index.end()) {
        idx = static_cast<int>(rel_names.size());
        rel_index[rel] = idx;
        rel_names.push_back(rel);
        ground_proj.emplace_back();
        null_proj.emplace_back();
        for (const Fact& f : db.facts_of(rel)) {
          const Term& t = f.args[col];
          (t.null ? null_proj : ground_proj)[idx].insert(t.name);
        }
      } else {
        idx = it->second;
      }
      mask |= 1u << idx;
    }
    singleton.push_back(mask);
  }
  std::size_t m = singleton.size();

  std::map<std::string, std::uint32_t> null_sig;
  for (std::size_t r = 0; r < rel_names.size(); ++r) {
    for (const std::string& n : null_proj[r]) null_sig[n] |= 1u << r;
  }
  std::set<std::uint32_t> distinct_sigs;
  for (const auto& [n, sig] : null_sig) distinct_sigs.insert(sig);
  if (static_cast<int>(distinct_sigs.size()) > caps.max_block_signatures)
    fail(errc::capability,
         "query needs " + std::to_string(distinct_sigs.size()) +
             " null blocks, limit is " +
             std::to_string(caps.max_block_signatures));

  BigCount outside_factor = 1;
  for (const std::string& n : db.nulls()) {
    if (!null_sig.count(n)) outside_factor *= d;
  }

  // Inclusion-exclusion over which unary singletons are violated.
  BigCount answer = 0;
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    std::uint32_t active = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (s & (1u << i)) active |= singleton[i];
    }

    // A constant present in every relation of a violated singleton defeats
    // the violation outright.
    bool impossible = false;
    for (std::size_t i = 0; i < m && !impossible; ++i) {
      if (!(s & (1u << i))) continue;
      std::set<std::string> common;
      bool first = true;
      for (std::size_t r = 0; r < rel_names.size(); ++r) {
        if (!(singleton[i] & (1u << r))) continue;
        if (first) {
          common = ground_proj[r];
          first = false;
        } else {
          std::set<std::string> kept;
          for (const std::string& c : common) {
            if (ground_proj[r].count(c)) kept.insert(c);
          }
          common = std::move(kept);
        }
        if (common.empty()) break;
      }
      if (!common.empty()) impossible = true;
    }
    if (impossible) continue;

    BlockSum sum;
    for (std::size_t i = 0; i < m; ++i) {
      if (s & (1u << i)) sum.forbidden.push_back(singleton[i]);
    }

    BigCount free_factor = 1;
    std::map<std::uint32_t, int> block_sizes;
    for (const auto& [n, sig] : null_sig) {
      std::uint32_t restricted = sig & active;
      if (restricted == 0) {
        free_factor *= d;
      } else {
        ++block_sizes[restricted];
      }
    }
    for (const auto& [sig, n] : block_sizes) sum.blocks.push_back({sig, n});
    std::sort(sum.blocks.begin(), sum.blocks.end(),
              [](const auto& a, const auto& b) {
                int pa = std::popcount(a.first);
                int pb = std::popcount(b.first);
                return pa != pb ? pa < pb : a.first < b.first;
              });

    std::map<std::uint32_t, int> region_sizes;
    int pinned = 0;
    for (const std::string& c : dom) {
      std::uint32_t sig = 0;
      for (std::size_t r = 0; r < rel_names.size(); ++r) {
        if ((active & (1u << r)) && ground_proj[r].count(c)) sig |= 1u << r;
      }
      if (sig != 0) {
        ++region_sizes[sig];
        ++pinned;
      }
    }
    region_sizes[0] = static_cast<int>(d) - pinned;

    BigCount n_s = free_factor * sum.run(0, normalize(std::move(region_sizes)));
    if (s == 0 && n_s != total_valuations(db) / outside_factor)
      fail(errc::verification,
           "empty violation set disagrees with the valuation total");
    answer += std::popcount(s) % 2 == 0 ? n_s : -n_s;
  }
  return answer * outside_factor;
}

}  // namespace nullcount
