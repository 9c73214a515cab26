#pragma once

#include <cstdint>

namespace nullcount {

// Resource limits shared by every potentially expensive routine. All
// exhaustive paths check a cap before enumerating; exceeding one raises
// errc::resource (or errc::capability where the limit defines the supported
// instance class).
struct Caps {
  // Brute-force enumeration runs only when total_valuations(D) stays below
  // this bound.
  std::uint64_t brute_valuations = std::uint64_t{1} << 24;

  // Structural limits of the exact algorithms.
  int max_block_signatures = 8;  // distinct null signatures in the IE count
  int star_max_atoms = 3;        // atoms per connected component in the
                                 // uniform Codd count
  int max_constant_atoms = 6;    // target atoms in the constants DP
  int max_comp_relations = 3;    // relations in the unary completion count

  // Approximation machinery.
  std::uint64_t max_witnesses = std::uint64_t{1} << 20;
  int max_ie_witnesses = 20;  // exact union via inclusion-exclusion

  // Completion membership search budget (decision procedure nodes).
  std::uint64_t completion_search_nodes = std::uint64_t{1} << 22;

  // Hard-problem reference counters.
  int oracle_max_nodes = 20;  // graphs fed to the exponential counters
  int oracle_max_vars = 24;   // CNF variables

  // Worker threads for brute-force enumeration and sampling.
  int jobs = 1;
};

inline Caps default_caps() { return Caps{}; }

}  // namespace nullcount
