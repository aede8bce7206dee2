#ifndef FUTAMIX_INTERP_HPP
#define FUTAMIX_INTERP_HPP

#include "futamix/lang.hpp"
#include "futamix/value.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace futamix {

inline constexpr std::int64_t kDefaultStepBudget = 10'000'000;

// Store snapshot with deterministic (sorted-by-name) iteration order.
using Store = std::map<std::string, Value>;

struct TraceEntry {
  std::string label;
  Store store;  // snapshot at block entry
};

// Primitive application on values; throws RunError(TypeError) on misuse.
Value apply_prim(PrimOp op, const Value& a);
Value apply_prim(PrimOp op, const Value& a, const Value& b);

// Execute p on inputs until Return; counts each executed assignment and jump
// against step_budget.
Value run(const Program& p, const std::vector<Value>& inputs,
          std::int64_t step_budget = kDefaultStepBudget);

std::pair<Value, std::vector<TraceEntry>> run_traced(
    const Program& p, const std::vector<Value>& inputs,
    std::int64_t step_budget = kDefaultStepBudget);

// Steps consumed by the most recent successful run() on this thread.
std::int64_t last_run_steps();

}  // namespace futamix

#endif
