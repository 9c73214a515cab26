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

// Per (atom, null-position mask) quantities. alpha counts the matches of
// the fact's non-center part once the center value is fixed; z is the
// number of nulls in the fact.
struct Slot {
  std::uint32_t mask = 0;
  int z = 0;
  BigCount alpha;
  BigCount beta_det;   // d^z - alpha
  BigCount beta_free;  // d^z - d * alpha
  BigCount dz;         // d^z
};

// Satisfying valuations of one connected component whose atoms all contain
// a single center variable. Works by counting the complement: a dynamic
// program pivots on the constants occurring at center positions, tracking
// per atom how many values its remaining all-null facts are barred from,
// and a closing sum distributes those facts over the domain without ever
// completing the component at any value.
struct StarCounter {
  const IncompleteDatabase& db;
  const Domain& dom;
  unsigned long d;
  int m;

  // Non-center variables' position lists, per atom.
  std::vector<std::vector<std::vector<std::size_t>>> nonx_positions;
  std::vector<std::vector<Slot>> slots;
  std::vector<std::map<std::uint32_t, int>> slot_idx;
  std::vector<int> offset;          // atom -> first index in the flat q vector
  int qlen = 0;                     // atoms 0..m-2 carry mutable free counts
  std::vector<std::vector<int>> free_init;         // [atom][slot]
  std::vector<std::string> consts;                 // determined center values
  std::vector<char> const_in_dom;
  std::vector<std::vector<std::vector<int>>> det;  // [const][atom][slot]
  BigCount comp_total = 1;    // d^{nulls over all facts of the component}
  BigCount removed_factor = 1;  // d^{nulls of never-matching facts}
  std::map<std::vector<int>, BigCount> memo;

  StarCounter(const IncompleteDatabase& database, const Domain& domain,
              const std::vector<Atom>& atoms)
      : db(database), dom(domain), d(domain.size()),
        m(static_cast<int>(atoms.size())) {
    std::string center = find_center(atoms);
    nonx_positions.resize(m);
    slots.resize(m);
    slot_idx.resize(m);
    free_init.resize(m);

    struct Kept {
      int atom;
      std::uint32_t mask;
      bool determined;
      std::string value;
    };
    std::vector<Kept> kept;
    std::map<std::string, int> const_index;

    for (int ai = 0; ai < m; ++ai) {
      const Atom& a = atoms[ai];
      if (a.args.size() > 30)
        fail(errc::capability, "atom arity above 30 is unsupported");
      std::map<std::string, std::vector<std::size_t>> positions;
      for (std::size_t p = 0; p < a.args.size(); ++p) {
        if (!a.args[p].variable)
          fail(errc::verification, "constant survived into the star counter");
        positions[a.args[p].name].push_back(p);
      }
      if (!positions.count(center))
        fail(errc::verification, "component atom misses the center variable");
      for (const auto& [var, pos] : positions) {
        if (var != center) nonx_positions[ai].push_back(pos);
      }

      for (const Fact& f : db.facts_of(a.relation)) {
        std::uint32_t mask = 0;
        for (std::size_t p = 0; p < f.args.size(); ++p) {
          if (f.args[p].null) mask |= 1u << p;
        }
        comp_total *= bpow(d, std::popcount(mask));

        bool removed = false;
        bool determined = false;
        std::string value;
        for (const auto& [var, pos] : positions) {
          std::set<std::string> constants;
          bool has_null = false;
          for (std::size_t p : pos) {
            if (f.args[p].null) {
              has_null = true;
            } else {
              constants.insert(f.args[p].name);
            }
          }
          if (constants.size() >= 2) {
            removed = true;
            break;
          }
          if (constants.size() == 1) {
            const std::string& c = *constants.begin();
            if (has_null &&
                !std::binary_search(dom.begin(), dom.end(), c)) {
              removed = true;
              break;
            }
            if (var == center) {
              determined = true;
              value = c;
            }
          }
        }
        if (removed) {
          removed_factor *= bpow(d, std::popcount(mask));
          continue;
        }
        kept.push_back({ai, mask, determined, value});
        if (determined && !const_index.count(value)) {
          const_index[value] = 0;
        }
      }
    }

    for (const auto& [c, unused] : const_index) consts.push_back(c);
    std::sort(consts.begin(), consts.end());
    for (std::size_t i = 0; i < consts.size(); ++i) const_index[consts[i]] = static_cast<int>(i);
    const_in_dom.resize(consts.size());
    for (std::size_t i = 0; i < consts.size(); ++i) {
      const_in_dom[i] =
          std::binary_search(dom.begin(), dom.end(), consts[i]) ? 1 : 0;
    }

    for (const Kept& kf : kept) ensure_slot(kf.atom, kf.mask);
    det.assign(consts.size(), {});
    for (auto& per_atom : det) {
      per_atom.resize(m);
      for (int ai = 0; ai < m; ++ai) per_atom[ai].assign(slots[ai].size(), 0);
    }
    for (int ai = 0; ai < m; ++ai) free_init[ai].assign(slots[ai].size(), 0);
    for (const Kept& kf : kept) {
      int s = slot_idx[kf.atom].at(kf.mask);
      if (kf.determined) {
        ++det[const_index.at(kf.value)][kf.atom][s];
      } else {
        ++free_init[kf.atom][s];
      }
    }

    offset.assign(m, 0);
    for (int ai = 0; ai + 1 < m; ++ai) {
      offset[ai] = qlen;
      qlen += static_cast<int>(slots[ai].size());
    }
  }

  static std::string find_center(const std::vector<Atom>& atoms) {
    std::map<std::string, int> atom_count;
    for (const Atom& a : atoms) {
      std::set<std::string> vars;
      for (const QueryTerm& t : a.args) {
        if (t.variable) vars.insert(t.name);
      }
      for (const std::string& v : vars) ++atom_count[v];
    }
    std::string center;
    for (const auto& [v, n] : atom_count) {
      if (n < 2) continue;
      if (!center.empty() && center != v)
        fail(errc::verification, "component shares more than one variable");
      center = v;
    }
    if (center.empty() || atom_count[center] != static_cast<int>(atoms.size()))
      fail(errc::verification, "component atoms do not share one variable");
    return center;
  }

  void ensure_slot(int atom, std::uint32_t mask) {
    if (slot_idx[atom].count(mask)) return;
    Slot s;
    s.mask = mask;
    s.z = std::popcount(mask);
    s.alpha = 1;
    for (const std::vector<std::size_t>& pos : nonx_positions[atom]) {
      bool all_null = true;
      for (std::size_t p : pos) all_null &= (mask >> p) & 1u;
      if (all_null) s.alpha *= d;
    }
    s.dz = bpow(d, s.z);
    s.beta_det = s.dz - s.alpha;
    s.beta_free = s.dz - s.alpha * d;
    slot_idx[atom][mask] = static_cast<int>(slots[atom].size());
    slots[atom].push_back(std::move(s));
  }

  BigCount count() {
    std::vector<int> qflat(qlen, 0);
    for (int ai = 0; ai + 1 < m; ++ai) {
      for (std::size_t t = 0; t < slots[ai].size(); ++t)
        qflat[offset[ai] + t] = free_init[ai][t];
    }
    std::vector<int> rvec(m, 0);
    BigCount failing =
        nonsat(static_cast<int>(consts.size()), qflat, rvec) * removed_factor;
    return comp_total - failing;
  }

  BigCount nonsat(int v, std::vector<int>& qflat, std::vector<int>& rvec) {
    std::vector<int> key;
    key.reserve(1 + m + qlen);
    key.push_back(v);
    key.insert(key.end(), rvec.begin(), rvec.end());
    key.insert(key.end(), qflat.begin(), qflat.end());
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    BigCount result = v == 0 ? closing_sum(qflat, rvec) : pivot(v, qflat, rvec);
    memo.emplace(std::move(key), result);
    return result;
  }

  // Pivot on the last remaining determined constant: sum over the first
  // atom j that fails at it. Earlier atoms must match there at least once;
  // their unchosen all-null facts become barred from that value.
  BigCount pivot(int v, std::vector<int>& qflat, std::vector<int>& rvec) {
    int ci = v - 1;
    bool cd = const_in_dom[ci];
    BigCount total = 0;
    for (int j = 0; j < m; ++j) {
      BigCount fixed = 1;
      for (std::size_t t = 0; t < slots[j].size(); ++t)
        fixed *= bpow(slots[j][t].beta_det, det[ci][j][t]);
      for (int i = j + 1; i < m; ++i) {
        for (std::size_t t = 0; t < slots[i].size(); ++t)
          fixed *= bpow(slots[i][t].dz, det[ci][i][t]);
      }
      if (fixed == 0) continue;

      // Depth-first over atoms before j; per atom over its determined and
      // free slots, requiring at least one match.
      auto per_atom = [&](auto&& self, int i, const BigCount& weight) -> void {
        if (i == j) {
          std::vector<int> newr = rvec;
          if (cd) {
            for (int ii = 0; ii <= j && ii < m; ++ii) ++newr[ii];
          }
          total += weight * fixed * nonsat(v - 1, qflat, newr);
          return;
        }
        std::size_t det_slots = slots[i].size();
        std::size_t free_slots = cd ? slots[i].size() : 0;
        auto units = [&](auto&& unit_self, std::size_t u, int hits,
                         const BigCount& w) -> void {
          if (u == det_slots + free_slots) {
            if (hits >= 1) self(self, i + 1, w);
            return;
          }
          if (u < det_slots) {
            std::size_t t = u;
            int n = det[ci][i][t];
            const Slot& sl = slots[i][t];
            for (int h = 0; h <= n; ++h) {
              BigCount wh = w * binomial(n, h) * bpow(sl.alpha, h) *
                            bpow(sl.beta_det, n - h);
              if (wh != 0) unit_self(unit_self, u + 1, hits + h, wh);
            }
          } else {
            std::size_t t = u - det_slots;
            int& qref = qflat[offset[i] + static_cast<int>(t)];
            int q0 = qref;
            const Slot& sl = slots[i][t];
            for (int h = 0; h <= q0; ++h) {
              BigCount wh = w * binomial(q0, h) * bpow(sl.alpha, h);
              qref = q0 - h;
              unit_self(unit_self, u + 1, hits + h, wh);
            }
            qref = q0;
          }
        };
        units(units, 0, 0, weight);
      };
      per_atom(per_atom, 0, BigCount(1));
    }
    return total;
  }

  // No determined constants remain. Split the domain into layers by how
  // many leading atoms are barred per value, pick which atoms match at
  // which values, and make each atom's matching facts cover its chosen
  // values surjectively.
  BigCount closing_sum(const std::vector<int>& qflat,
                       const std::vector<int>& rvec) {
    // Layer sizes: layer 0 has no bars, layer i bars atoms 0..i-1.
    std::vector<long> layer(m + 1, 0);
    layer[0] = static_cast<long>(d) - rvec[0];
    for (int i = 1; i < m; ++i) layer[i] = rvec[i - 1] - rvec[i];
    layer[m] = rvec[m - 1];
    for (long l : layer) {
      if (l < 0) fail(errc::verification, "bar counts are not nested");
    }

    // Per-atom tables g[j][s]: ways the atom's free facts cover exactly s
    // designated values, everything else matching nowhere.
    std::vector<std::vector<BigCount>> g(m);
    for (int j = 0; j < m; ++j) {
      std::vector<BigCount> poly{1};
      for (std::size_t t = 0; t < slots[j].size(); ++t) {
        int q = j + 1 < m ? qflat[offset[j] + static_cast<int>(t)]
                          : free_init[j][t];
        const Slot& sl = slots[j][t];
        std::vector<BigCount> next(poly.size() + q);
        for (std::size_t w0 = 0; w0 < poly.size(); ++w0) {
          if (poly[w0] == 0) continue;
          for (int h = 0; h <= q; ++h) {
            next[w0 + h] += poly[w0] * binomial(q, h) * bpow(sl.alpha, h) *
                            bpow(sl.beta_free, q - h);
          }
        }
        poly = std::move(next);
      }
      g[j].assign(d + 1, 0);
      for (unsigned long s = 0; s <= d; ++s) {
        for (std::size_t w0 = 0; w0 < poly.size(); ++w0) {
          if (poly[w0] != 0) g[j][s] += poly[w0] * surjections(w0, s);
        }
      }
    }

    // Options per layer: nonempty sets of allowed atoms; layer 0 must not
    // use all atoms at one value, or the component would be satisfied.
    std::vector<std::vector<std::uint32_t>> options(m + 1);
    std::uint32_t full = (1u << m) - 1;
    for (int i = 0; i <= m; ++i) {
      std::uint32_t allowed = full & ~((1u << std::min(i, m)) - 1);
      for (std::uint32_t t = allowed; t != 0; t = (t - 1) & allowed) {
        if (i == 0 && t == full) continue;
        options[i].push_back(t);
      }
      std::sort(options[i].begin(), options[i].end());
    }

    std::vector<long> s_of(m, 0);
    BigCount sum = 0;
    auto walk = [&](auto&& self, int li, std::size_t oi, long rest,
                    BigCount weight) -> void {
      if (li > m) {
        for (int j = 0; j < m && weight != 0; ++j) weight *= g[j][s_of[j]];
        sum += weight;
        return;
      }
      if (oi == options[li].size()) {
        long next_rest = li + 1 <= m ? layer[li + 1] : 0;
        self(self, li + 1, 0, next_rest, std::move(weight));
        return;
      }
      std::uint32_t t = options[li][oi];
      for (long u = 0; u <= rest; ++u) {
        BigCount w = weight * binomial(static_cast<unsigned long>(rest),
                                       static_cast<unsigned long>(u));
        if (w == 0) continue;
        for (int j = 0; j < m; ++j) {
          if (t & (1u << j)) s_of[j] += u;
        }
        self(self, li, oi + 1, rest - u, std::move(w));
        for (int j = 0; j < m; ++j) {
          if (t & (1u << j)) s_of[j] -= u;
        }
      }
    };
    walk(walk, 0, 0, layer[0], 1);
    return sum;
  }
};

}  // namespace

BigCount count_val_uniform_codd(const IncompleteDatabase& db,
                                const ConjunctiveQuery& q, const Caps& caps) {
  if (!db.codd()) fail(errc::setting, "database is not a Codd table");
  if (!db.uniform()) fail(errc::setting, "database is not uniform");
  detail::require_algorithm(q, {TableKind::codd, DomainKind::uniform},
                            {ProblemKind::valuations}, "uniform-codd-star");

  BigCount shortcut;
  if (detail::ground_shortcut(db, q, &shortcut)) return shortcut;
  if (detail::atoms_unmatchable(db, q)) return 0;

  const Domain& dom = db.uniform_domain();
  unsigned long d = dom.size();

  ConnectivityGraph graph = connectivity_graph(q);
  BigCount answer = 1;
  std::set<std::string> query_rels;
  for (const Atom& a : q.atoms) query_rels.insert(a.relation);

  for (const std::vector<int>& comp : graph.components) {
    bool empty_relation = false;
    for (int ai : comp) {
      if (db.facts_of(q.atoms[ai].relation).empty()) empty_relation = true;
    }
    if (empty_relation) return 0;

    if (comp.size() == 1) {
      answer *= detail::codd_atom_count(db, q.atoms[comp[0]]);
    } else {
      if (static_cast<int>(comp.size()) > caps.star_max_atoms)
        fail(errc::capability,
             "component has " + std::to_string(comp.size()) +
                 " atoms, limit is " + std::to_string(caps.star_max_atoms));
      std::vector<Atom> atoms;
      for (int ai : comp) atoms.push_back(q.atoms[ai]);
      StarCounter counter(db, dom, atoms);
      answer *= counter.count();
    }
    if (answer == 0) return 0;
  }

  std::set<std::string> used;
  for (const Fact& f : db.facts()) {
    if (!query_rels.count(f.relation)) continue;
    for (const Term& t : f.args) {
      if (t.null) used.insert(t.name);
    }
  }
  for (const std::string& n : db.nulls()) {
    if (!used.count(n)) answer *= d;
  }
  return answer;
}

}  // namespace nullcount
