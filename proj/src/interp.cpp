#include "futamix/interp.hpp"

#include "futamix/errors.hpp"

#include <optional>
#include <unordered_map>

namespace futamix {

Value apply_prim(PrimOp op, const Value& a) {
  switch (op) {
    case PrimOp::Car:
      if (!a.is_seq() || a.is_nil())
        throw RunError(RunErrorKind::TypeError, "car of non-sequence or empty sequence");
      return a.head();
    case PrimOp::Cdr:
      if (!a.is_seq() || a.is_nil())
        throw RunError(RunErrorKind::TypeError, "cdr of non-sequence or empty sequence");
      return a.tail();
    case PrimOp::IsAtom:
      return Value::boolean(!a.is_seq());
    case PrimOp::Not:
      return Value::boolean(a.is_symbol() && a.symbol_name() == "false");
    default:
      throw RunError(RunErrorKind::TypeError,
                     std::string("primitive ") + prim_name(op) + " is not unary");
  }
}

Value apply_prim(PrimOp op, const Value& a, const Value& b) {
  auto want_int = [&](const Value& v) -> const BigInt& {
    if (!v.is_int())
      throw RunError(RunErrorKind::TypeError, std::string(prim_name(op)) +
                                                  " expects integers, got " + print_datum(v));
    return v.int_value();
  };
  switch (op) {
    case PrimOp::Cons:
      if (!b.is_seq())
        throw RunError(RunErrorKind::TypeError, "cons onto non-sequence " + print_datum(b));
      return Value::cons(a, b);
    case PrimOp::Eq:
      return Value::boolean(a == b);
    case PrimOp::Add:
      return Value::integer(want_int(a) + want_int(b));
    case PrimOp::Sub:
      return Value::integer(want_int(a) - want_int(b));
    case PrimOp::Mul:
      return Value::integer(want_int(a) * want_int(b));
    case PrimOp::Quotient: {
      const BigInt& x = want_int(a);
      const BigInt& y = want_int(b);
      if (y == 0) throw RunError(RunErrorKind::TypeError, "quotient by zero");
      return Value::integer(x / y);
    }
    case PrimOp::Remainder: {
      const BigInt& x = want_int(a);
      const BigInt& y = want_int(b);
      if (y == 0) throw RunError(RunErrorKind::TypeError, "remainder by zero");
      return Value::integer(x % y);
    }
    case PrimOp::Lt:
      return Value::boolean(want_int(a) < want_int(b));
    case PrimOp::NumEq:
      return Value::boolean(want_int(a) == want_int(b));
    default:
      throw RunError(RunErrorKind::TypeError,
                     std::string("primitive ") + prim_name(op) + " is not binary");
  }
}

namespace {

thread_local std::int64_t g_last_run_steps = 0;

// Programs are resolved once per run: variables to slot indices, labels to
// block indices.
struct Resolved {
  const Program& p;
  std::unordered_map<std::string, int> var_ids;
  std::vector<std::string> var_names;
  std::vector<bool> assignable;  // param or assignment target somewhere
  std::unordered_map<std::string, int> block_ids;

  explicit Resolved(const Program& prog) : p(prog) {
    for (const auto& v : program_variables(prog)) {
      var_ids.emplace(v, static_cast<int>(var_names.size()));
      var_names.push_back(v);
    }
    assignable.assign(var_names.size(), false);
    for (const auto& v : prog.params) assignable[var_ids.at(v)] = true;
    for (const Block& b : prog.blocks)
      for (const Assign& a : b.assigns) assignable[var_ids.at(a.var)] = true;
    for (std::size_t i = 0; i < prog.blocks.size(); ++i)
      block_ids.emplace(prog.blocks[i].label, static_cast<int>(i));
  }
};

struct Machine {
  const Resolved& r;
  std::vector<std::optional<Value>> slots;
  std::int64_t steps = 0;
  std::int64_t budget;
  std::string at;

  Machine(const Resolved& res, std::int64_t b) : r(res), slots(res.var_names.size()), budget(b) {}

  void tick() {
    if (++steps > budget)
      throw RunError(RunErrorKind::StepBudgetExceeded,
                     "step budget of " + std::to_string(budget) + " exceeded", at);
  }

  const Value& load(const std::string& name) {
    int id = r.var_ids.at(name);
    if (!slots[id].has_value()) {
      if (!r.assignable[id])
        throw RunError(RunErrorKind::UnboundVariable,
                       "variable " + name + " is never assigned and is not a parameter", at);
      throw RunError(RunErrorKind::Uninitialized, "variable " + name + " read before assignment",
                     at);
    }
    return *slots[id];
  }

  Value eval(const ExprPtr& e) {
    switch (e->kind) {
      case Expr::Kind::Const:
        return e->value;
      case Expr::Kind::Var:
        return load(e->var);
      case Expr::Kind::Prim: {
        if (e->args.size() == 1) return apply_prim(e->op, eval(e->args[0]));
        Value a = eval(e->args[0]);
        Value b = eval(e->args[1]);
        return apply_prim(e->op, a, b);
      }
    }
    throw RunError(RunErrorKind::TypeError, "malformed expression");
  }
};

Value run_impl(const Program& p, const std::vector<Value>& inputs, std::int64_t step_budget,
               std::vector<TraceEntry>* trace) {
  auto diags = validate(p);
  if (!diags.empty())
    throw std::invalid_argument("run: program fails validation: " + diags.front().detail);
  if (inputs.size() != p.params.size())
    throw std::invalid_argument("run: expected " + std::to_string(p.params.size()) +
                                " inputs, got " + std::to_string(inputs.size()));
  if (step_budget <= 0) throw std::invalid_argument("run: step budget must be positive");

  Resolved res(p);
  Machine m(res, step_budget);
  for (std::size_t i = 0; i < inputs.size(); ++i)
    m.slots[res.var_ids.at(p.params[i])] = inputs[i];

  int block = res.block_ids.at(p.entry);
  while (true) {
    const Block& b = p.blocks[block];
    if (trace) {
      Store snap;
      for (std::size_t i = 0; i < res.var_names.size(); ++i)
        if (m.slots[i].has_value()) snap.emplace(res.var_names[i], *m.slots[i]);
      trace->push_back({b.label, std::move(snap)});
    }
    for (std::size_t i = 0; i < b.assigns.size(); ++i) {
      m.at = b.label + "/" + std::to_string(i);
      m.tick();
      m.slots[res.var_ids.at(b.assigns[i].var)] = m.eval(b.assigns[i].expr);
    }
    m.at = b.label;
    m.tick();
    switch (b.jump.kind) {
      case Jump::Kind::Goto:
        block = res.block_ids.at(b.jump.target);
        break;
      case Jump::Kind::If:
        block = res.block_ids.at(m.eval(b.jump.cond).truthy() ? b.jump.then_label
                                                              : b.jump.else_label);
        break;
      case Jump::Kind::Return: {
        Value out = m.eval(b.jump.ret);
        g_last_run_steps = m.steps;
        return out;
      }
    }
  }
}

}  // namespace

Value run(const Program& p, const std::vector<Value>& inputs, std::int64_t step_budget) {
  return run_impl(p, inputs, step_budget, nullptr);
}

std::pair<Value, std::vector<TraceEntry>> run_traced(const Program& p,
                                                     const std::vector<Value>& inputs,
                                                     std::int64_t step_budget) {
  std::vector<TraceEntry> trace;
  Value v = run_impl(p, inputs, step_budget, &trace);
  return {v, std::move(trace)};
}

std::int64_t last_run_steps() { return g_last_run_steps; }

}  // namespace futamix
