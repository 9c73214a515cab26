#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "nullcount/approx.h"
#include "nullcount/errors.h"

namespace nullcount {

namespace {

struct VarOcc {
  int atom;
  std::size_t pos;
};

void emit_witnesses(const IncompleteDatabase& db, const ConjunctiveQuery& cq,
                    int disjunct, const Caps& caps,
                    std::vector<Witness>& out) {
  int n_atoms = static_cast<int>(cq.atoms.size());
  std::vector<std::vector<Fact>> facts(n_atoms);
  for (int i = 0; i < n_atoms; ++i) {
    facts[i] = db.facts_of(cq.atoms[i].relation);
    if (facts[i].empty()) return;
  }
  std::map<std::string, std::vector<VarOcc>> var_occ;
  for (int i = 0; i < n_atoms; ++i) {
    for (std::size_t p = 0; p < cq.atoms[i].args.size(); ++p) {
      if (cq.atoms[i].args[p].variable)
        var_occ[cq.atoms[i].args[p].name].push_back({i, p});
    }
  }
  std::vector<const std::string*> vars;
  for (const auto& [v, occ] : var_occ) vars.push_back(&v);

  std::vector<int> choice(n_atoms, 0);
  Valuation forced;

  // Assign values to variables in name order; every candidate value must
  // agree with the chosen facts and previously forced nulls.
  auto assign = [&](auto&& self, std::size_t vi,
                    std::map<std::string, std::string>& assignment) -> void {
    if (vi == vars.size()) {
      if (static_cast<std::uint64_t>(out.size()) >= caps.max_witnesses)
        fail(errc::resource,
             "witness enumeration exceeded " +
                 std::to_string(caps.max_witnesses) + " witnesses");
      Witness w;
      w.disjunct = disjunct;
      w.fact_choice = choice;
      w.assignment = assignment;
      w.forced = forced;
      w.cylinder = 1;
      for (const std::string& n : db.nulls()) {
        if (!forced.count(n)) w.cylinder *= db.dom(n).size();
      }
      out.push_back(std::move(w));
      return;
    }
    const std::string& x = *vars[vi];
    const std::vector<VarOcc>& occ = var_occ.at(x);
    std::set<std::string> candidates;
    bool first = true;
    for (const VarOcc& o : occ) {
      const Term& t = facts[o.atom][choice[o.atom]].args[o.pos];
      std::set<std::string> here;
      if (!t.null) {
        here.insert(t.name);
      } else if (auto it = forced.find(t.name); it != forced.end()) {
        here.insert(it->second);
      } else {
        const Domain& d = db.dom(t.name);
        here.insert(d.begin(), d.end());
      }
      if (first) {
        candidates = std::move(here);
        first = false;
      } else {
        std::set<std::string> merged;
        for (const std::string& v : candidates) {
          if (here.count(v)) merged.insert(v);
        }
        candidates = std::move(merged);
      }
      if (candidates.empty()) return;
    }
    for (const std::string& v : candidates) {
      std::vector<std::string> newly;
      for (const VarOcc& o : occ) {
        const Term& t = facts[o.atom][choice[o.atom]].args[o.pos];
        if (t.null && !forced.count(t.name)) {
          forced[t.name] = v;
          newly.push_back(t.name);
        }
      }
      assignment[x] = v;
      self(self, vi + 1, assignment);
      assignment.erase(x);
      for (const std::string& n : newly) forced.erase(n);
    }
  };

  // Choose one fact per atom, then pin the constants, then the variables.
  auto pick = [&](auto&& self, int ai) -> void {
    if (ai == n_atoms) {
      forced.clear();
      bool ok = true;
      std::vector<std::string> newly;
      for (int i = 0; i < n_atoms && ok; ++i) {
        const Atom& a = cq.atoms[i];
        const Fact& f = facts[i][choice[i]];
        for (std::size_t p = 0; p < a.args.size() && ok; ++p) {
          if (a.args[p].variable) continue;
          const std::string& c = a.args[p].name;
          const Term& t = f.args[p];
          if (!t.null) {
            ok = t.name == c;
            continue;
          }
          const Domain& d = db.dom(t.name);
          if (!std::binary_search(d.begin(), d.end(), c)) {
            ok = false;
          } else if (auto it = forced.find(t.name); it != forced.end()) {
            ok = it->second == c;
          } else {
            forced[t.name] = c;
          }
        }
      }
      if (ok) {
        std::map<std::string, std::string> assignment;
        assign(assign, 0, assignment);
      }
      forced.clear();
      return;
    }
    for (int fi = 0; fi < static_cast<int>(facts[ai].size()); ++fi) {
      choice[ai] = fi;
      self(self, ai + 1);
    }
  };
  pick(pick, 0);
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t run,
                         std::uint64_t batch) {
  return mix64(mix64(mix64(seed) ^ run) ^ batch);
}

// Uniform draw in [0, n) without std::uniform_int_distribution, whose
// output is implementation-defined.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  int bits = std::bit_width(n - 1);
  std::uint64_t mask =
      bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
  while (true) {
    std::uint64_t v = rng() & mask;
    if (v < n) return v;
  }
}

BigCount draw_big_below(std::mt19937_64& rng, const BigCount& bound) {
  std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  if (bound == BigCount(1) << (bits - 1)) {
    // Powers of two would otherwise waste a rejection round.
    bits -= 1;
    if (bits == 0) return 0;
  }
  std::size_t words = (bits + 63) / 64;
  std::size_t top_bits = bits - 64 * (words - 1);
  std::vector<std::uint64_t> w(words);
  while (true) {
    for (std::size_t i = 0; i < words; ++i) w[i] = rng();
    if (top_bits < 64) w[words - 1] &= (std::uint64_t{1} << top_bits) - 1;
    BigCount r;
    mpz_import(r.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0,
               w.data());
    if (r < bound) return r;
  }
}

}  // namespace

std::vector<Witness> enumerate_witnesses(const IncompleteDatabase& db,
                                         const UnionQuery& q,
                                         const Caps& caps) {
  std::vector<Witness> out;
  for (std::size_t di = 0; di < q.disjuncts.size(); ++di) {
    const ConjunctiveQuery& cq = q.disjuncts[di];
    if (!cq.boolean())
      fail(errc::capability, "witness enumeration needs a Boolean query");
    emit_witnesses(db, cq, static_cast<int>(di), caps, out);
  }
  return out;
}

BigCount exact_union_by_ie(const IncompleteDatabase& db,
                           const std::vector<Witness>& witnesses,
                           const Caps& caps) {
  if (static_cast<int>(witnesses.size()) > caps.max_ie_witnesses)
    fail(errc::capability,
         "inclusion-exclusion limited to " +
             std::to_string(caps.max_ie_witnesses) + " witnesses");

  auto cylinder = [&](const Valuation& forced) {
    BigCount c = 1;
    for (const std::string& n : db.nulls()) {
      if (!forced.count(n)) c *= db.dom(n).size();
    }
    return c;
  };

  BigCount total = 0;
  auto rec = [&](auto&& self, std::size_t next, const Valuation& merged,
                 int size) -> void {
    for (std::size_t j = next; j < witnesses.size(); ++j) {
      Valuation m2 = merged;
      bool conflict = false;
      for (const auto& [n, v] : witnesses[j].forced) {
        auto [it, inserted] = m2.emplace(n, v);
        if (!inserted && it->second != v) {
          conflict = true;
          break;
        }
      }
      if (conflict) continue;
      BigCount c = cylinder(m2);
      total += (size + 1) % 2 == 1 ? c : -c;
      self(self, j + 1, m2, size + 1);
    }
  };
  rec(rec, 0, {}, 0);
  return total;
}

EstimateReport estimate_valuations(const IncompleteDatabase& db,
                                   const UnionQuery& q, double epsilon,
                                   double delta, std::uint64_t seed,
                                   const Caps& caps) {
  if (!(epsilon > 0)) fail(errc::domain, "epsilon must be positive");
  if (!(delta > 0 && delta < 1)) fail(errc::domain, "delta must be in (0,1)");

  std::vector<Witness> witnesses = enumerate_witnesses(db, q, caps);
  EstimateReport report;
  report.epsilon = epsilon;
  report.delta = delta;
  report.seed = seed;
  report.witness_count = witnesses.size();

  if (witnesses.empty()) {
    report.numerator = 0;
    report.exact = true;
    return report;
  }
  if (witnesses.size() == 1) {
    report.numerator = witnesses[0].cylinder;
    report.exact = true;
    return report;
  }

  const std::vector<std::string>& nulls = db.nulls();
  std::map<std::string, int> null_index;
  std::vector<std::uint64_t> dom_size(nulls.size());
  std::vector<const Domain*> doms(nulls.size());
  for (std::size_t i = 0; i < nulls.size(); ++i) {
    null_index[nulls[i]] = static_cast<int>(i);
    doms[i] = &db.dom(nulls[i]);
    dom_size[i] = doms[i]->size();
  }

  // Forced maps compiled to (null index, value index) pairs.
  std::size_t n_wit = witnesses.size();
  std::vector<std::vector<std::pair<int, int>>> compiled(n_wit);
  std::vector<BigCount> cum(n_wit + 1);
  for (std::size_t i = 0; i < n_wit; ++i) {
    for (const auto& [n, v] : witnesses[i].forced) {
      int ni = null_index.at(n);
      int vi = static_cast<int>(
          std::lower_bound(doms[ni]->begin(), doms[ni]->end(), v) -
          doms[ni]->begin());
      compiled[i].push_back({ni, vi});
    }
    cum[i + 1] = cum[i] + witnesses[i].cylinder;
  }
  const BigCount& total_cyl = cum[n_wit];

  int runs = 1;
  double delta0 = delta;
  if (delta < 0.25) {
    runs = static_cast<int>(std::ceil(8.0 * std::log(1.0 / delta)));
    if (runs % 2 == 0) ++runs;
    delta0 = 0.25;
  }
  long double m_real = 3.0L * static_cast<long double>(n_wit) *
                       std::log(2.0L / delta0) /
                       (static_cast<long double>(epsilon) * epsilon);
  if (m_real > 1e12L)
    fail(errc::resource, "estimate needs more than 1e12 samples per run");
  std::uint64_t m = static_cast<std::uint64_t>(std::ceil(m_real));
  if (m == 0) m = 1;

  constexpr std::uint64_t kBatch = 1024;
  std::uint64_t n_batches = (m + kBatch - 1) / kBatch;

  // One batch of samples; the draw sequence per sample is fixed (witness,
  // then unforced nulls in index order), so totals do not depend on how
  // batches are spread over threads.
  auto run_batch = [&](std::uint64_t run, std::uint64_t batch) {
    std::mt19937_64 rng(batch_seed(seed, run, batch));
    std::uint64_t begin = batch * kBatch;
    std::uint64_t end = std::min(m, begin + kBatch);
    std::uint64_t accepted = 0;
    std::vector<int> val(nulls.size());
    for (std::uint64_t s = begin; s < end; ++s) {
      BigCount u = draw_big_below(rng, total_cyl);
      std::size_t i =
          std::upper_bound(cum.begin(), cum.end(), u) - cum.begin() - 1;
      std::fill(val.begin(), val.end(), -1);
      for (const auto& [ni, vi] : compiled[i]) val[ni] = vi;
      for (std::size_t ni = 0; ni < val.size(); ++ni) {
        if (val[ni] < 0)
          val[ni] = static_cast<int>(draw_below(rng, dom_size[ni]));
      }
      for (std::size_t j = 0; j < n_wit; ++j) {
        bool consistent = true;
        for (const auto& [ni, vi] : compiled[j]) {
          if (val[ni] != vi) {
            consistent = false;
            break;
          }
        }
        if (consistent) {
          if (j == i) ++accepted;
          break;
        }
      }
    }
    return accepted;
  };

  std::vector<std::uint64_t> run_accepted(runs, 0);
  for (int run = 0; run < runs; ++run) {
    int threads =
        std::max(1, std::min<int>(caps.jobs, static_cast<int>(std::min<std::uint64_t>(
                                      n_batches, 256))));
    if (threads == 1) {
      std::uint64_t acc = 0;
      for (std::uint64_t b = 0; b < n_batches; ++b) acc += run_batch(run, b);
      run_accepted[run] = acc;
    } else {
      std::vector<std::uint64_t> partial(threads, 0);
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
          std::uint64_t acc = 0;
          for (std::uint64_t b = t; b < n_batches; b += threads)
            acc += run_batch(run, b);
          partial[t] = acc;
        });
      }
      for (std::thread& th : pool) th.join();
      std::uint64_t acc = 0;
      for (std::uint64_t p : partial) acc += p;
      run_accepted[run] = acc;
    }
  }

  std::sort(run_accepted.begin(), run_accepted.end());
  std::uint64_t median = run_accepted[run_accepted.size() / 2];

  report.numerator = total_cyl * BigCount(static_cast<unsigned long>(median));
  report.denominator = m;
  report.samples = static_cast<std::uint64_t>(runs) * m;
  report.exact = false;
  return report;
}

}  // namespace nullcount
