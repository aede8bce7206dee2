#include "futamix/lang.hpp"

#include "futamix/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace futamix {

namespace {

struct PrimInfo {
  const char* name;
  int arity;
};

// Order matches the PrimOp enumeration.
constexpr PrimInfo kPrims[] = {
    {"cons", 2}, {"car", 1}, {"cdr", 1}, {"atom?", 1}, {"eq?", 2},
    {"+", 2},    {"-", 2},   {"*", 2},   {"quotient", 2}, {"remainder", 2},
    {"<", 2},    {"=", 2},   {"not", 1},
};

}  // namespace

const char* prim_name(PrimOp op) { return kPrims[static_cast<int>(op)].name; }

int prim_arity(PrimOp op) { return kPrims[static_cast<int>(op)].arity; }

bool lookup_prim(const std::string& name, PrimOp& out) {
  for (int i = 0; i < static_cast<int>(std::size(kPrims)); ++i) {
    if (name == kPrims[i].name) {
      out = static_cast<PrimOp>(i);
      return true;
    }
  }
  return false;
}

ExprPtr Expr::constant(Value v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Const;
  e->value = std::move(v);
  return e;
}

ExprPtr Expr::variable(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Var;
  e->var = std::move(name);
  return e;
}

ExprPtr Expr::prim(PrimOp op, std::vector<ExprPtr> args) {
  if (static_cast<int>(args.size()) != prim_arity(op))
    throw ArityError(std::string("primitive ") + prim_name(op) + " expects " +
                     std::to_string(prim_arity(op)) + " arguments, got " +
                     std::to_string(args.size()));
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Prim;
  e->op = op;
  e->args = std::move(args);
  return e;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Const:
      return a->value == b->value;
    case Expr::Kind::Var:
      return a->var == b->var;
    case Expr::Kind::Prim: {
      if (a->op != b->op || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!expr_equal(a->args[i], b->args[i])) return false;
      return true;
    }
  }
  return false;
}

Jump Jump::jgoto(std::string l) {
  Jump j;
  j.kind = Kind::Goto;
  j.target = std::move(l);
  return j;
}

Jump Jump::jif(ExprPtr cond, std::string t, std::string e) {
  Jump j;
  j.kind = Kind::If;
  j.cond = std::move(cond);
  j.then_label = std::move(t);
  j.else_label = std::move(e);
  return j;
}

Jump Jump::jreturn(ExprPtr e) {
  Jump j;
  j.kind = Kind::Return;
  j.ret = std::move(e);
  return j;
}

namespace {

bool jump_equal(const Jump& a, const Jump& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Jump::Kind::Goto:
      return a.target == b.target;
    case Jump::Kind::If:
      return a.then_label == b.then_label && a.else_label == b.else_label &&
             expr_equal(a.cond, b.cond);
    case Jump::Kind::Return:
      return expr_equal(a.ret, b.ret);
  }
  return false;
}

}  // namespace

bool operator==(const Program& a, const Program& b) {
  if (a.params != b.params || a.entry != b.entry || a.blocks.size() != b.blocks.size())
    return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const Block& x = a.blocks[i];
    const Block& y = b.blocks[i];
    if (x.label != y.label || x.assigns.size() != y.assigns.size()) return false;
    for (std::size_t k = 0; k < x.assigns.size(); ++k)
      if (x.assigns[k].var != y.assigns[k].var ||
          !expr_equal(x.assigns[k].expr, y.assigns[k].expr))
        return false;
    if (!jump_equal(x.jump, y.jump)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Datum <-> AST conversions.  The concrete syntax wraps the encoding as
// (program (read v*) entry (block+)); both share the block/expr/jump shapes.
// ---------------------------------------------------------------------------

namespace {

std::string want_symbol(const Value& v, const char* what) {
  if (!v.is_symbol())
    throw DecodeError(std::string(what) + " must be a symbol, got " + print_datum(v));
  return v.symbol_name();
}

ExprPtr expr_from_value(const Value& v) {
  if (!v.is_seq() || v.is_nil())
    throw DecodeError("expression must be a non-empty sequence, got " + print_datum(v));
  std::vector<Value> items = v.seq_items();
  const std::string tag = want_symbol(items[0], "expression tag");
  if (tag == "quote") {
    if (items.size() != 2) throw DecodeError("quote takes one datum: " + print_datum(v));
    return Expr::constant(items[1]);
  }
  if (tag == "var") {
    if (items.size() != 2) throw DecodeError("var takes one name: " + print_datum(v));
    return Expr::variable(want_symbol(items[1], "variable name"));
  }
  if (tag == "op") {
    if (items.size() < 2) throw DecodeError("op needs a primitive name: " + print_datum(v));
    PrimOp op;
    const std::string name = want_symbol(items[1], "primitive name");
    if (!lookup_prim(name, op))
      throw DecodeError("unknown primitive \"" + name + "\" in " + print_datum(v));
    std::vector<ExprPtr> args;
    for (std::size_t i = 2; i < items.size(); ++i) args.push_back(expr_from_value(items[i]));
    if (static_cast<int>(args.size()) != prim_arity(op))
      throw ArityError("primitive " + name + " expects " + std::to_string(prim_arity(op)) +
                       " arguments, got " + std::to_string(args.size()) + " in " +
                       print_datum(v));
    return Expr::prim(op, std::move(args));
  }
  throw DecodeError("unknown expression tag \"" + tag + "\" in " + print_datum(v));
}

Value expr_to_value(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Const:
      return Value::list({Value::symbol("quote"), e->value});
    case Expr::Kind::Var:
      return Value::list({Value::symbol("var"), Value::symbol(e->var)});
    case Expr::Kind::Prim: {
      std::vector<Value> items{Value::symbol("op"), Value::symbol(prim_name(e->op))};
      for (const auto& a : e->args) items.push_back(expr_to_value(a));
      return Value::list(items);
    }
  }
  return Value::nil();
}

// Labels in decoded values may be arbitrary data; LabelNamer maps them to
// symbols, inventing g0, g1, ... for non-symbol labels.
struct LabelNamer {
  std::unordered_map<Value, std::string, ValueHash> names;
  std::set<std::string> taken;
  int next = 0;

  std::string name(const Value& label) {
    auto it = names.find(label);
    if (it != names.end()) return it->second;
    std::string n;
    if (label.is_symbol()) {
      n = label.symbol_name();
    } else {
      do {
        n = "g" + std::to_string(next++);
      } while (taken.count(n));
    }
    taken.insert(n);
    names.emplace(label, n);
    return n;
  }
};

Assign assign_from_value(const Value& v, LabelNamer&) {
  std::vector<Value> items = v.is_seq() ? v.seq_items() : std::vector<Value>{};
  if (items.size() != 3 || !items[0].is_symbol() || items[0].symbol_name() != ":=")
    throw DecodeError("assignment must be (:= var expr), got " + print_datum(v));
  return Assign{want_symbol(items[1], "assignment target"), expr_from_value(items[2])};
}

Jump jump_from_value(const Value& v, LabelNamer& namer) {
  std::vector<Value> items = v.is_seq() ? v.seq_items() : std::vector<Value>{};
  if (items.empty() || !items[0].is_symbol())
    throw DecodeError("jump must be tagged, got " + print_datum(v));
  const std::string tag = items[0].symbol_name();
  if (tag == "goto") {
    if (items.size() != 2) throw DecodeError("goto takes one label: " + print_datum(v));
    return Jump::jgoto(namer.name(items[1]));
  }
  if (tag == "if") {
    if (items.size() != 4) throw DecodeError("if takes cond and two labels: " + print_datum(v));
    return Jump::jif(expr_from_value(items[1]), namer.name(items[2]), namer.name(items[3]));
  }
  if (tag == "return") {
    if (items.size() != 2) throw DecodeError("return takes one expression: " + print_datum(v));
    return Jump::jreturn(expr_from_value(items[1]));
  }
  throw DecodeError("unknown jump tag \"" + tag + "\" in " + print_datum(v));
}

bool is_jump_value(const Value& v) {
  if (!v.is_seq() || v.is_nil()) return false;
  const Value h = v.head();
  if (!h.is_symbol()) return false;
  const std::string& t = h.symbol_name();
  return t == "goto" || t == "if" || t == "return";
}

Block block_from_value(const Value& v, LabelNamer& namer) {
  std::vector<Value> items = v.is_seq() ? v.seq_items() : std::vector<Value>{};
  // Accept (label jump) as shorthand for (label () jump).
  if (items.size() == 2 && is_jump_value(items[1])) {
    Block b;
    b.label = namer.name(items[0]);
    b.jump = jump_from_value(items[1], namer);
    return b;
  }
  if (items.size() != 3)
    throw DecodeError("block must be (label assigns jump), got " + print_datum(v));
  Block b;
  b.label = namer.name(items[0]);
  if (!items[1].is_seq()) throw DecodeError("assign list must be a sequence: " + print_datum(v));
  for (const Value& a : items[1].seq_items()) b.assigns.push_back(assign_from_value(a, namer));
  b.jump = jump_from_value(items[2], namer);
  return b;
}

Program program_from_parts(const Value& params, const Value& entry, const Value& blocks) {
  Program p;
  if (!params.is_seq()) throw DecodeError("parameter list must be a sequence");
  for (const Value& v : params.seq_items()) p.params.push_back(want_symbol(v, "parameter"));
  LabelNamer namer;
  p.entry = namer.name(entry);
  if (!blocks.is_seq()) throw DecodeError("block list must be a sequence");
  for (const Value& b : blocks.seq_items()) p.blocks.push_back(block_from_value(b, namer));
  return p;
}

}  // namespace

Program parse_program(const std::string& text) {
  Value v;
  try {
    v = parse_datum(text);
  } catch (const ParseError&) {
    throw;
  }
  try {
    std::vector<Value> items = v.is_seq() ? v.seq_items() : std::vector<Value>{};
    if (items.size() != 4 || !items[0].is_symbol() || items[0].symbol_name() != "program")
      throw DecodeError("program must be (program (read v*) entry (block+))");
    std::vector<Value> rd = items[1].is_seq() ? items[1].seq_items() : std::vector<Value>{};
    if (rd.empty() || !rd[0].is_symbol() || rd[0].symbol_name() != "read")
      throw DecodeError("parameter list must start with `read`");
    std::vector<Value> params(rd.begin() + 1, rd.end());
    return program_from_parts(Value::list(params), items[2], items[3]);
  } catch (const DecodeError& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

namespace {

void print_expr(const ExprPtr& e, std::string& out) {
  out += print_datum(expr_to_value(e));
}

}  // namespace

std::string print_program(const Program& p) {
  std::string out = "(program (read";
  for (const auto& v : p.params) {
    out += ' ';
    out += v;
  }
  out += ") " + p.entry + "\n  (";
  bool first = true;
  for (const Block& b : p.blocks) {
    if (!first) out += "\n   ";
    first = false;
    out += "(" + b.label + "\n    (";
    bool fa = true;
    for (const Assign& a : b.assigns) {
      if (!fa) out += "\n     ";
      fa = false;
      out += "(:= " + a.var + " ";
      print_expr(a.expr, out);
      out += ")";
    }
    out += ")\n    ";
    switch (b.jump.kind) {
      case Jump::Kind::Goto:
        out += "(goto " + b.jump.target + ")";
        break;
      case Jump::Kind::If:
        out += "(if ";
        print_expr(b.jump.cond, out);
        out += " " + b.jump.then_label + " " + b.jump.else_label + ")";
        break;
      case Jump::Kind::Return:
        out += "(return ";
        print_expr(b.jump.ret, out);
        out += ")";
        break;
    }
    out += ")";
  }
  out += "))\n";
  return out;
}

Value encode_program(const Program& p) {
  std::vector<Value> params;
  for (const auto& v : p.params) params.push_back(Value::symbol(v));
  std::vector<Value> blocks;
  for (const Block& b : p.blocks) {
    std::vector<Value> assigns;
    for (const Assign& a : b.assigns)
      assigns.push_back(
          Value::list({Value::symbol(":="), Value::symbol(a.var), expr_to_value(a.expr)}));
    Value jump;
    switch (b.jump.kind) {
      case Jump::Kind::Goto:
        jump = Value::list({Value::symbol("goto"), Value::symbol(b.jump.target)});
        break;
      case Jump::Kind::If:
        jump = Value::list({Value::symbol("if"), expr_to_value(b.jump.cond),
                            Value::symbol(b.jump.then_label), Value::symbol(b.jump.else_label)});
        break;
      case Jump::Kind::Return:
        jump = Value::list({Value::symbol("return"), expr_to_value(b.jump.ret)});
        break;
    }
    blocks.push_back(Value::list({Value::symbol(b.label), Value::list(assigns), jump}));
  }
  return Value::list({Value::list(params), Value::symbol(p.entry), Value::list(blocks)});
}

Program decode_program(const Value& v) {
  std::vector<Value> items = v.is_seq() ? v.seq_items() : std::vector<Value>{};
  if (items.size() != 3)
    throw DecodeError("encoded program must be (params entry blocks), got " + print_datum(v));
  return program_from_parts(items[0], items[1], items[2]);
}

std::vector<Diagnostic> validate(const Program& p) {
  std::vector<Diagnostic> out;
  std::set<std::string> params;
  for (const auto& v : p.params)
    if (!params.insert(v).second)
      out.push_back({"DuplicateParam", v, "parameter " + v + " declared twice"});
  std::set<std::string> labels;
  for (const Block& b : p.blocks)
    if (!labels.insert(b.label).second)
      out.push_back({"DuplicateLabel", b.label, "block label " + b.label + " defined twice"});
  auto check_target = [&](const std::string& l, const std::string& at) {
    if (!labels.count(l))
      out.push_back({"UnboundLabel", at, "jump to undefined label " + l});
  };
  check_target(p.entry, "entry");
  for (const Block& b : p.blocks) {
    switch (b.jump.kind) {
      case Jump::Kind::Goto:
        check_target(b.jump.target, b.label);
        break;
      case Jump::Kind::If:
        check_target(b.jump.then_label, b.label);
        check_target(b.jump.else_label, b.label);
        break;
      case Jump::Kind::Return:
        break;
    }
  }
  return out;
}

Program canonicalize(const Program& p) {
  std::unordered_map<std::string, const Block*> by_label;
  for (const Block& b : p.blocks) by_label.emplace(b.label, &b);

  std::map<std::string, std::string> rename;
  std::vector<const Block*> order;
  std::vector<std::string> stack{p.entry};
  while (!stack.empty()) {
    std::string l = stack.back();
    stack.pop_back();
    if (rename.count(l)) continue;
    auto it = by_label.find(l);
    if (it == by_label.end())
      throw std::invalid_argument("canonicalize: undefined label " + l);
    rename.emplace(l, "l" + std::to_string(order.size()));
    order.push_back(it->second);
    const Jump& j = it->second->jump;
    switch (j.kind) {
      case Jump::Kind::Goto:
        stack.push_back(j.target);
        break;
      case Jump::Kind::If:
        // push else first so the then branch is discovered first
        stack.push_back(j.else_label);
        stack.push_back(j.then_label);
        break;
      case Jump::Kind::Return:
        break;
    }
  }

  Program out;
  out.params = p.params;
  out.entry = rename.at(p.entry);
  for (const Block* b : order) {
    Block nb;
    nb.label = rename.at(b->label);
    nb.assigns = b->assigns;
    switch (b->jump.kind) {
      case Jump::Kind::Goto:
        nb.jump = Jump::jgoto(rename.at(b->jump.target));
        break;
      case Jump::Kind::If:
        nb.jump = Jump::jif(b->jump.cond, rename.at(b->jump.then_label),
                            rename.at(b->jump.else_label));
        break;
      case Jump::Kind::Return:
        nb.jump = b->jump;
        break;
    }
    out.blocks.push_back(std::move(nb));
  }
  return out;
}

void collect_expr_vars(const ExprPtr& e, std::vector<std::string>& out) {
  switch (e->kind) {
    case Expr::Kind::Const:
      return;
    case Expr::Kind::Var:
      out.push_back(e->var);
      return;
    case Expr::Kind::Prim:
      for (const auto& a : e->args) collect_expr_vars(a, out);
      return;
  }
}

std::vector<std::string> program_variables(const Program& p) {
  std::vector<std::string> vars(p.params);
  for (const Block& b : p.blocks) {
    for (const Assign& a : b.assigns) {
      vars.push_back(a.var);
      collect_expr_vars(a.expr, vars);
    }
    if (b.jump.kind == Jump::Kind::If) collect_expr_vars(b.jump.cond, vars);
    if (b.jump.kind == Jump::Kind::Return) collect_expr_vars(b.jump.ret, vars);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

}  // namespace futamix
