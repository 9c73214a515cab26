#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nullcount/approx.h"
#include "nullcount/big.h"
#include "nullcount/caps.h"
#include "nullcount/classify.h"
#include "nullcount/model.h"
#include "nullcount/query.h"

namespace nullcount {

// How plan_and_count is allowed to answer.
enum class CountMode {
  automatic,  // exact when tractable, else approximate (valuations) or
              // brute force under caps (completions)
  exact,      // dispatched polynomial algorithm only
  brute,      // exhaustive enumeration under caps
  approx,     // randomized estimate; valuations only
};

struct PlanParams {
  CountMode mode = CountMode::automatic;
  double epsilon = 0.2;
  double delta = 0.25;
  std::uint64_t seed = 0;
  // Overrides the setting inferred from the database. Claiming a stricter
  // setting than the database satisfies is errc::setting; a looser one is
  // allowed.
  std::optional<TableKind> table;
  std::optional<DomainKind> domain;
  Caps caps;
};

struct PlanResult {
  Setting setting;
  ExactVerdict verdict;
  // Which path produced the answer: the algorithm id, "brute-force", or
  // "karp-luby".
  std::string method;
  bool estimated = false;
  BigCount count;              // when not estimated
  EstimateReport estimate;     // when estimated
};

Setting infer_setting(const IncompleteDatabase& db);
Setting resolve_setting(const IncompleteDatabase& db,
                        std::optional<TableKind> table,
                        std::optional<DomainKind> domain);

// Routes a counting request to the right machinery: classifies the query
// under the effective setting, dispatches the exact algorithm when
// tractable, and otherwise falls back per the mode. Hard completion counts
// have no estimator, so they run brute force or raise errc::resource /
// errc::capability with the verdict in the message.
PlanResult plan_and_count(const IncompleteDatabase& db, const UnionQuery& q,
                          Problem problem,
                          const PlanParams& params = PlanParams{});

}  // namespace nullcount
