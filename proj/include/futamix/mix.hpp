#ifndef FUTAMIX_MIX_HPP
#define FUTAMIX_MIX_HPP

#include "futamix/bta.hpp"
#include "futamix/lang.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace futamix {

// Mapping from static variable names to their values.
using StaticStore = std::map<std::string, Value>;

Value encode_static_store(const StaticStore& vs);
StaticStore decode_static_store(const Value& v);

struct SpecializeOptions {
  std::int64_t block_budget = 200'000;        // max specialization states processed
  std::int64_t step_budget_static = 5'000'000;  // static work per state
  bool compress_gotos = true;
};

// Per-label live variable sets (live at block entry), least fixpoint of the
// usual backward equations.  Exposed for tests; the specializer and the
// specializer-in-L must agree on these sets exactly.
std::map<std::string, std::vector<std::string>> live_in_sets(const Program& p);

// Constant propagation and folding under division d: static variables become
// constants, primitives with all-constant reduced arguments fold via the
// interpreter's primitive semantics.
ExprPtr reduce_expr(const ExprPtr& e, const Division& d, const StaticStore& vs);

// Polyvariant specialization of p to the static store vs0 under congruent
// division d.  Output is canonical.
Program specialize(const Program& p, const Division& d, const StaticStore& vs0,
                   const SpecializeOptions& opts = {});

// Convenience: params with a supplied value are static, the rest dynamic.
Program mix(const Program& p, const StaticStore& static_inputs,
            const SpecializeOptions& opts = {});

// Specialization states processed by the most recent specialize() call.
std::int64_t last_specialize_states();

}  // namespace futamix

#endif
