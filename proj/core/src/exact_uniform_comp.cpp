#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "exact_internal.h"
#include "nullcount/combinatorics.h"
#include "nullcount/exact.h"

namespace nullcount {

namespace {

// A completion of a unary database is determined by the relation set every
// domain value ends up in (plus the fixed facts over out-of-domain
// constants). The counter sums binomial weights over all such signature
// assignments, keeping only the ones some valuation can realize.
struct CompSum {
  int k = 0;                    // relations, as bits of a signature
  unsigned long d = 0;
  std::uint32_t full = 0;
  std::vector<std::uint32_t> sigs;  // 1..full

  std::map<std::uint32_t, int> ground_sig_count;  // in-domain constants
  std::vector<std::uint32_t> outofdom_sigs;
  std::map<std::uint32_t, int> blocks;  // null signature -> count

  // Values named by constant atoms get their signatures enumerated one by
  // one instead of through the pools.
  std::vector<std::uint32_t> tracked_gsig;
  std::vector<std::uint32_t> tracked_final;
  std::vector<std::uint32_t> var_needs;      // per query variable
  std::vector<std::pair<int, std::uint32_t>> tracked_needs;  // (value, rel bit)
  bool impossible = false;  // some requirement fails in every completion
  bool negated = false;

  BigCount total = 0;

  // Profile state during enumeration.
  std::map<std::uint32_t, int> pool;  // untracked values still at their sig
  long fresh_pool = 0;
  std::map<std::uint32_t, int> u_fresh;
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> u_up;

  bool outofdom_witness(std::uint32_t t) const {
    for (std::uint32_t s : outofdom_sigs) {
      if ((s & t) == t) return true;
    }
    return false;
  }

  bool some_value_covers(std::uint32_t t) const {
    for (std::uint32_t s : sigs) {
      if ((s & t) != t) continue;
      auto itp = pool.find(s);
      if (itp != pool.end() && itp->second >= 1) return true;
      auto itf = u_fresh.find(s);
      if (itf != u_fresh.end() && itf->second >= 1) return true;
      for (const auto& [key, u] : u_up) {
        if (key.first == s && u >= 1) return true;
      }
    }
    for (std::uint32_t s : tracked_final) {
      if ((s & t) == t) return true;
    }
    return false;
  }

  bool satisfied() const {
    if (impossible) return false;
    for (const auto& [v, bit] : tracked_needs) {
      if (!(tracked_final[v] & bit)) return false;
    }
    for (std::uint32_t t : var_needs) {
      if (!outofdom_witness(t) && !some_value_covers(t)) return false;
    }
    return true;
  }

  // Whether some valuation realizes exactly the enumerated signatures:
  // every demanded value is covered by nulls whose signatures stay inside
  // its final signature, within block budgets, and leftover nulls of every
  // block still have somewhere legal to go.
  bool feasible() const {
    struct Demand {
      std::uint32_t final_sig;
      std::uint32_t missing;
      int mult;
    };
    std::vector<Demand> demands;
    long members = 0;
    for (const auto& [s, u] : u_fresh) {
      if (u > 0) {
        demands.push_back({s, s, u});
        members += u;
      }
    }
    for (const auto& [key, u] : u_up) {
      if (u > 0) {
        demands.push_back({key.first, key.first & ~key.second, u});
        members += u;
      }
    }
    for (std::size_t v = 0; v < tracked_final.size(); ++v) {
      std::uint32_t missing = tracked_final[v] & ~tracked_gsig[v];
      if (missing) {
        demands.push_back({tracked_final[v], missing, 1});
        ++members;
      }
    }

    long null_count = 0;
    for (const auto& [t, n] : blocks) null_count += n;
    if (members > null_count) return false;

    std::vector<std::pair<std::uint32_t, int>> budget(blocks.begin(),
                                                      blocks.end());
    auto absorbable = [&](std::uint32_t t) {
      for (const auto& [s, c] : pool) {
        if (c >= 1 && (s & t) == t) return true;
      }
      for (const Demand& dm : demands) {
        if ((dm.final_sig & t) == t) return true;
      }
      for (std::uint32_t s : tracked_final) {
        if ((s & t) == t) return true;
      }
      return false;
    };

    // Depth-first over demand members; each picks an inclusion-minimal set
    // of blocks covering what it is missing.
    auto rec = [&](auto&& self, std::size_t di, int left) -> bool {
      while (di < demands.size() && left == 0) {
        ++di;
        left = di < demands.size() ? demands[di].mult : 0;
      }
      if (di == demands.size()) {
        for (const auto& [t, n] : budget) {
          if (n > 0 && !absorbable(t)) return false;
        }
        return true;
      }
      const Demand& dm = demands[di];
      auto cover = [&](auto&& cself, std::size_t bi,
                       std::uint32_t have) -> bool {
        if ((have & dm.missing) == dm.missing)
          return self(self, di, left - 1);
        if (bi == budget.size()) return false;
        if (cself(cself, bi + 1, have)) return true;
        auto& [t, n] = budget[bi];
        if (n > 0 && (t & dm.final_sig) == t && (t & ~have & dm.missing)) {
          --n;
          bool ok = cself(cself, bi + 1, have | t);
          ++n;
          if (ok) return true;
        }
        return false;
      };
      return cover(cover, 0, 0);
    };
    return rec(rec, 0, demands.empty() ? 0 : demands[0].mult);
  }

  void finish_profile(const BigCount& weight) {
    if (weight == 0) return;
    if (satisfied() == negated) return;
    if (!feasible()) return;
    total += weight;
  }

  // Enumerates, in signature order, how many untracked values move from
  // each origin to each target signature, with sequential binomial pools.
  void enumerate(std::size_t si, const BigCount& weight) {
    if (si == sigs.size()) {
      finish_profile(weight);
      return;
    }
    std::uint32_t s = sigs[si];
    std::vector<std::uint32_t> origins;  // proper nonempty subsets of s
    for (std::uint32_t o = (s - 1) & s; o != 0; o = (o - 1) & s)
      origins.push_back(o);
    std::sort(origins.begin(), origins.end());

    auto per_origin = [&](auto&& self, std::size_t oi,
                          const BigCount& w) -> void {
      if (oi == origins.size() + 1) {
        enumerate(si + 1, w);
        return;
      }
      if (oi == 0) {
        long avail = fresh_pool;
        for (long u = 0; u <= avail; ++u) {
          BigCount wu = w * binomial(static_cast<unsigned long>(avail),
                                     static_cast<unsigned long>(u));
          fresh_pool = avail - static_cast<long>(u);
          u_fresh[s] = static_cast<int>(u);
          self(self, oi + 1, wu);
        }
        fresh_pool = avail;
        u_fresh.erase(s);
        return;
      }
      std::uint32_t o = origins[oi - 1];
      int avail = pool.count(o) ? pool.at(o) : 0;
      for (int u = 0; u <= avail; ++u) {
        BigCount wu = w * binomial(static_cast<unsigned long>(avail),
                                   static_cast<unsigned long>(u));
        pool[o] = avail - u;
        u_up[{s, o}] = u;
        self(self, oi + 1, wu);
      }
      pool[o] = avail;
      u_up.erase({s, o});
    };
    per_origin(per_origin, 0, weight);
  }
};

}  // namespace

BigCount count_comp_uniform_unary(const IncompleteDatabase& db,
                                  const ConjunctiveQuery& q, bool negated,
                                  const Caps& caps) {
  if (!db.uniform()) fail(errc::setting, "database is not uniform");
  detail::require_algorithm(q, {TableKind::naive, DomainKind::uniform},
                            {ProblemKind::completions, negated},
                            "uniform-unary-comp");
  for (const Fact& f : db.facts()) {
    if (f.args.size() != 1)
      fail(errc::capability, "completion counting needs a unary database");
  }

  std::map<std::string, int> rel_bit;
  for (const Atom& a : q.atoms) {
    int next = static_cast<int>(rel_bit.size());
    rel_bit.emplace(a.relation, next);
  }
  if (static_cast<int>(rel_bit.size()) > caps.max_comp_relations)
    fail(errc::capability, "query uses " + std::to_string(rel_bit.size()) +
                               " relations, limit is " +
                               std::to_string(caps.max_comp_relations));
  for (const auto& entry : db.arities()) {
    if (!rel_bit.count(entry.first))
      fail(errc::capability, "database relation " + entry.first +
                                 " does not occur in the query");
  }

  if (db.nulls().empty()) {
    GroundDatabase g = apply_valuation(db, {});
    return eval(q, g) != negated ? 1 : 0;
  }

  const Domain& dom = db.uniform_domain();

  CompSum sum;
  sum.negated = negated;
  sum.k = static_cast<int>(rel_bit.size());
  sum.d = dom.size();
  sum.full = (1u << sum.k) - 1;
  for (std::uint32_t s = 1; s <= sum.full; ++s) sum.sigs.push_back(s);
  std::sort(sum.sigs.begin(), sum.sigs.end(),
            [](std::uint32_t a, std::uint32_t b) {
              int pa = std::popcount(a);
              int pb = std::popcount(b);
              return pa != pb ? pa < pb : a < b;
            });

  std::map<std::string, std::uint32_t> const_sig;
  std::map<std::string, std::uint32_t> null_sig;
  for (const Fact& f : db.facts()) {
    std::uint32_t bit = 1u << rel_bit.at(f.relation);
    const Term& t = f.args[0];
    (t.null ? null_sig : const_sig)[t.name] |= bit;
  }
  for (const auto& [n, s] : null_sig) ++sum.blocks[s];

  std::map<std::string, std::uint32_t> indom_gsig;
  for (const std::string& c : dom) indom_gsig[c] = 0;
  for (const auto& [c, s] : const_sig) {
    if (indom_gsig.count(c)) {
      indom_gsig[c] = s;
    } else {
      sum.outofdom_sigs.push_back(s);
    }
  }

  // Query requirements: per variable the set of relations it must hit
  // through one value; constant atoms pin a specific value.
  std::map<std::string, std::uint32_t> var_mask;
  std::map<std::string, int> tracked_index;
  for (const Atom& a : q.atoms) {
    std::uint32_t bit = 1u << rel_bit.at(a.relation);
    const QueryTerm& t = a.args[0];
    if (t.variable) {
      var_mask[t.name] |= bit;
      continue;
    }
    if (!std::binary_search(dom.begin(), dom.end(), t.name)) {
      // Out-of-domain target: either its ground fact exists in every
      // completion or in none.
      bool present = const_sig.count(t.name) &&
                     (const_sig.at(t.name) & bit);
      if (!present) sum.impossible = true;
      continue;
    }
    auto it =
        tracked_index.emplace(t.name, static_cast<int>(tracked_index.size()))
            .first;
    sum.tracked_needs.push_back({it->second, bit});
  }
  for (const auto& [v, mask] : var_mask) sum.var_needs.push_back(mask);

  std::vector<std::string> tracked_names(tracked_index.size());
  for (const auto& [name, idx] : tracked_index) tracked_names[idx] = name;
  sum.tracked_gsig.resize(tracked_names.size());
  for (std::size_t i = 0; i < tracked_names.size(); ++i)
    sum.tracked_gsig[i] = indom_gsig.at(tracked_names[i]);

  // Pools of untracked values by ground signature.
  std::map<std::uint32_t, int> base_pool;
  long fresh = 0;
  for (const auto& [c, s] : indom_gsig) {
    if (tracked_index.count(c)) continue;
    if (s == 0) {
      ++fresh;
    } else {
      ++base_pool[s];
    }
  }

  // Enumerate the tracked values' final signatures, then the pools.
  BigCount grand_total = 0;
  sum.tracked_final.assign(tracked_names.size(), 0);
  auto tracked_rec = [&](auto&& self, std::size_t v) -> void {
    if (v == tracked_names.size()) {
      sum.total = 0;
      sum.pool = base_pool;
      sum.fresh_pool = fresh;
      sum.u_fresh.clear();
      sum.u_up.clear();
      sum.enumerate(0, 1);
      grand_total += sum.total;
      return;
    }
    std::uint32_t g = sum.tracked_gsig[v];
    // Supersets of g: iterate over subsets of the complement.
    std::uint32_t comp = sum.full & ~g;
    std::uint32_t extra = 0;
    while (true) {
      sum.tracked_final[v] = g | extra;
      self(self, v + 1);
      if (extra == comp) break;
      extra = (extra - comp) & comp;
    }
  };
  tracked_rec(tracked_rec, 0);
  return grand_total;
}

}  // namespace nullcount
