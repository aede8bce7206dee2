#include "futamix/mix.hpp"

#include "futamix/errors.hpp"
#include "futamix/interp.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

namespace futamix {

Value encode_static_store(const StaticStore& vs) {
  std::vector<Value> items;
  for (const auto& [v, val] : vs) items.push_back(Value::list({Value::symbol(v), val}));
  return Value::list(items);
}

StaticStore decode_static_store(const Value& v) {
  StaticStore vs;
  if (!v.is_seq()) throw DecodeError("static store must be a sequence of (var datum)");
  for (const Value& e : v.seq_items()) {
    std::vector<Value> pair = e.is_seq() ? e.seq_items() : std::vector<Value>{};
    if (pair.size() != 2 || !pair[0].is_symbol())
      throw DecodeError("static store entry must be (var datum), got " + print_datum(e));
    vs[pair[0].symbol_name()] = pair[1];
  }
  return vs;
}

std::map<std::string, std::vector<std::string>> live_in_sets(const Program& p) {
  std::map<std::string, std::set<std::string>> live;
  for (const Block& b : p.blocks) live[b.label];  // start empty

  auto expr_vars = [](const ExprPtr& e) {
    std::vector<std::string> vars;
    collect_expr_vars(e, vars);
    return vars;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const Block& b : p.blocks) {
      std::set<std::string> s;
      switch (b.jump.kind) {
        case Jump::Kind::Goto:
          s = live[b.jump.target];
          break;
        case Jump::Kind::If: {
          s = live[b.jump.then_label];
          const auto& e = live[b.jump.else_label];
          s.insert(e.begin(), e.end());
          for (const auto& v : expr_vars(b.jump.cond)) s.insert(v);
          break;
        }
        case Jump::Kind::Return:
          for (const auto& v : expr_vars(b.jump.ret)) s.insert(v);
          break;
      }
      for (auto it = b.assigns.rbegin(); it != b.assigns.rend(); ++it) {
        s.erase(it->var);
        for (const auto& v : expr_vars(it->expr)) s.insert(v);
      }
      std::set<std::string>& cur = live[b.label];
      std::size_t before = cur.size();
      cur.insert(s.begin(), s.end());
      if (cur.size() != before) changed = true;
    }
  }

  std::map<std::string, std::vector<std::string>> out;
  for (auto& [l, s] : live) out.emplace(l, std::vector<std::string>(s.begin(), s.end()));
  return out;
}

namespace {

thread_local std::int64_t g_last_states = 0;

bool expr_static(const ExprPtr& e, const Division& d) {
  switch (e->kind) {
    case Expr::Kind::Const:
      return true;
    case Expr::Kind::Var: {
      auto it = d.find(e->var);
      return it != d.end() && it->second == BindingTime::Static;
    }
    case Expr::Kind::Prim:
      for (const auto& a : e->args)
        if (!expr_static(a, d)) return false;
      return true;
  }
  return false;
}

ExprPtr reduce_rec(const ExprPtr& e, const Division& d, const StaticStore& vs) {
  switch (e->kind) {
    case Expr::Kind::Const:
      return e;
    case Expr::Kind::Var: {
      auto it = d.find(e->var);
      if (it != d.end() && it->second == BindingTime::Static) {
        auto vit = vs.find(e->var);
        if (vit == vs.end())
          throw RunError(RunErrorKind::Uninitialized,
                         "static variable " + e->var + " has no value at specialization time");
        return Expr::constant(vit->second);
      }
      return e;
    }
    case Expr::Kind::Prim: {
      std::vector<ExprPtr> rs;
      rs.reserve(e->args.size());
      bool all_const = true;
      for (const auto& a : e->args) {
        rs.push_back(reduce_rec(a, d, vs));
        all_const = all_const && rs.back()->kind == Expr::Kind::Const;
      }
      if (all_const) {
        Value v = rs.size() == 1 ? apply_prim(e->op, rs[0]->value)
                                 : apply_prim(e->op, rs[0]->value, rs[1]->value);
        return Expr::constant(std::move(v));
      }
      return Expr::prim(e->op, std::move(rs));
    }
  }
  return e;
}

// Restricted static store at a label: (name, value) pairs for variables that
// are live at the label, classified static, and currently bound, sorted by
// name (the map order).
using RestrictedStore = std::vector<std::pair<std::string, Value>>;

struct StateKey {
  std::string label;
  RestrictedStore store;

  bool operator==(const StateKey& o) const {
    if (label != o.label || store.size() != o.store.size()) return false;
    for (std::size_t i = 0; i < store.size(); ++i)
      if (store[i].first != o.store[i].first || !(store[i].second == o.store[i].second))
        return false;
    return true;
  }
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : k.label) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    for (const auto& [name, v] : k.store) {
      for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
      h = (h ^ v.hash()) * 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

std::string state_text(const StateKey& k) {
  std::string s = "(" + k.label + " (";
  bool first = true;
  for (const auto& [name, v] : k.store) {
    if (!first) s += ' ';
    first = false;
    s += "(" + name + " " + print_datum(v) + ")";
  }
  return s + "))";
}

struct Specializer {
  const Program& p;
  const Division& d;
  const SpecializeOptions& opts;
  std::unordered_map<std::string, const Block*> by_label;
  // live static variables per label, sorted by name
  std::map<std::string, std::vector<std::string>> live_static;

  std::deque<StateKey> queue;
  std::unordered_map<StateKey, std::string, StateKeyHash> names;
  std::vector<Block> residual;
  std::int64_t states = 0;

  Specializer(const Program& prog, const Division& div, const SpecializeOptions& o)
      : p(prog), d(div), opts(o) {
    for (const Block& b : p.blocks) by_label.emplace(b.label, &b);
    for (auto& [label, vars] : live_in_sets(p)) {
      std::vector<std::string> ls;
      for (const auto& v : vars) {
        auto it = d.find(v);
        if (it != d.end() && it->second == BindingTime::Static) ls.push_back(v);
      }
      live_static.emplace(label, std::move(ls));
    }
  }

  RestrictedStore restrict_store(const std::string& label, const StaticStore& vs) const {
    RestrictedStore out;
    for (const auto& v : live_static.at(label)) {
      auto it = vs.find(v);
      if (it != vs.end()) out.emplace_back(v, it->second);
    }
    return out;
  }

  // Residual label for a state, assigned at first enqueue.
  std::string state_name(const StateKey& k) {
    auto it = names.find(k);
    if (it != names.end()) return it->second;
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(StateKeyHash{}(k)));
    std::string name = k.label + "@" + buf;
    // hash collisions get a deterministic suffix
    bool taken = true;
    int salt = 0;
    while (taken) {
      taken = false;
      for (const auto& [key, n] : names)
        if (n == name) {
          name = k.label + "@" + buf + "." + std::to_string(salt++);
          taken = true;
          break;
        }
    }
    names.emplace(k, name);
    return name;
  }

  // Enqueue-if-new; returns the state's residual label either way.
  std::string enqueue(const StateKey& k) {
    bool known = names.count(k) > 0;
    std::string name = state_name(k);
    if (!known) queue.push_back(k);
    return name;
  }

  Program run(const StaticStore& vs0) {
    StaticStore seed_vs;
    for (const auto& [v, val] : vs0) {
      auto it = d.find(v);
      if (it != d.end() && it->second == BindingTime::Static) seed_vs[v] = val;
    }
    StateKey seed{p.entry, restrict_store(p.entry, seed_vs)};
    std::string entry_name = enqueue(seed);

    while (!queue.empty()) {
      StateKey state = queue.front();
      queue.pop_front();
      if (++states > opts.block_budget)
        throw SpecializeError(SpecializeErrorKind::BlockBudgetExceeded,
                              "block budget of " + std::to_string(opts.block_budget) +
                                  " exceeded",
                              state_text(state));
      process(state);
    }

    Program out;
    for (const auto& v : p.params) {
      auto it = d.find(v);
      if (it == d.end() || it->second == BindingTime::Dynamic) out.params.push_back(v);
    }
    out.entry = entry_name;
    out.blocks = std::move(residual);
    g_last_states = states;
    return canonicalize(out);
  }

  void process(const StateKey& state) {
    StaticStore vs;
    for (const auto& [name, v] : state.store) vs[name] = v;

    Block out;
    out.label = names.at(state);
    std::string label = state.label;
    std::int64_t ticks = 0;
    auto tick = [&] {
      if (++ticks > opts.step_budget_static)
        throw SpecializeError(SpecializeErrorKind::StaticStepBudgetExceeded,
                              "static step budget of " +
                                  std::to_string(opts.step_budget_static) +
                                  " exceeded (static loop?)",
                              state_text(state));
    };

    auto reduce_here = [&](const ExprPtr& e) {
      try {
        return reduce_rec(e, d, vs);
      } catch (const RunError& err) {
        throw SpecializeError(err.kind == RunErrorKind::TypeError
                                  ? SpecializeErrorKind::FoldError
                                  : SpecializeErrorKind::StaticUnbound,
                              err.what(), state_text(state));
      }
    };

    while (true) {
      const Block* b = by_label.at(label);
      for (const Assign& a : b->assigns) {
        tick();
        ExprPtr re = reduce_here(a.expr);
        auto it = d.find(a.var);
        if (it != d.end() && it->second == BindingTime::Static) {
          if (re->kind != Expr::Kind::Const)
            throw SpecializeError(SpecializeErrorKind::CongruenceBreach,
                                  "static " + a.var + " did not reduce to a constant",
                                  state_text(state));
          vs[a.var] = re->value;
        } else {
          out.assigns.push_back({a.var, re});
        }
      }
      tick();
      switch (b->jump.kind) {
        case Jump::Kind::Goto: {
          const std::string& m = b->jump.target;
          if (opts.compress_gotos) {
            vs = restricted_as_map(m, vs);
            label = m;
            continue;
          }
          StateKey succ{m, restrict_store(m, vs)};
          out.jump = Jump::jgoto(enqueue(succ));
          residual.push_back(std::move(out));
          return;
        }
        case Jump::Kind::If: {
          ExprPtr rc = reduce_here(b->jump.cond);
          if (rc->kind == Expr::Kind::Const) {
            const std::string& m =
                rc->value.truthy() ? b->jump.then_label : b->jump.else_label;
            vs = restricted_as_map(m, vs);
            label = m;
            continue;
          }
          StateKey st{b->jump.then_label, restrict_store(b->jump.then_label, vs)};
          StateKey se{b->jump.else_label, restrict_store(b->jump.else_label, vs)};
          std::string nt = enqueue(st);
          std::string ne = enqueue(se);
          out.jump = Jump::jif(rc, nt, ne);
          residual.push_back(std::move(out));
          return;
        }
        case Jump::Kind::Return: {
          out.jump = Jump::jreturn(reduce_here(b->jump.ret));
          residual.push_back(std::move(out));
          return;
        }
      }
    }
  }

  StaticStore restricted_as_map(const std::string& label, const StaticStore& vs) const {
    StaticStore out;
    for (const auto& v : live_static.at(label)) {
      auto it = vs.find(v);
      if (it != vs.end()) out.emplace(v, it->second);
    }
    return out;
  }
};

}  // namespace

ExprPtr reduce_expr(const ExprPtr& e, const Division& d, const StaticStore& vs) {
  return reduce_rec(e, d, vs);
}

Program specialize(const Program& p, const Division& d, const StaticStore& vs0,
                   const SpecializeOptions& opts) {
  auto diags = validate(p);
  if (!diags.empty())
    throw std::invalid_argument("specialize: program fails validation: " + diags.front().detail);
  auto cong = check_congruence(p, d);
  if (!cong.empty())
    throw std::invalid_argument("specialize: division not congruent: " + cong.front().detail);
  for (const auto& [v, val] : vs0) {
    auto it = d.find(v);
    if (it == d.end() || it->second != BindingTime::Static)
      throw std::invalid_argument("specialize: static store binds non-static variable " + v);
  }
  for (const auto& v : p.params) {
    auto it = d.find(v);
    if (it != d.end() && it->second == BindingTime::Static && !vs0.count(v))
      throw std::invalid_argument("specialize: static parameter " + v + " has no value");
  }
  if (opts.block_budget <= 0 || opts.step_budget_static <= 0)
    throw std::invalid_argument("specialize: budgets must be positive");

  Specializer s(p, d, opts);
  return s.run(vs0);
}

Program mix(const Program& p, const StaticStore& static_inputs, const SpecializeOptions& opts) {
  for (const auto& [v, val] : static_inputs)
    if (std::find(p.params.begin(), p.params.end(), v) == p.params.end())
      throw std::invalid_argument("mix: static input " + v + " is not a parameter");
  std::map<std::string, BindingTime> classes;
  for (const auto& v : p.params)
    classes[v] = static_inputs.count(v) ? BindingTime::Static : BindingTime::Dynamic;
  return specialize(p, analyze(p, classes), static_inputs, opts);
}

std::int64_t last_specialize_states() { return g_last_states; }

}  // namespace futamix
