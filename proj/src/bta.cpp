#include "futamix/bta.hpp"

#include "futamix/errors.hpp"

namespace futamix {

Division analyze(const Program& p, const std::map<std::string, BindingTime>& param_classes) {
  if (param_classes.size() != p.params.size())
    throw std::invalid_argument("analyze: param classes must cover exactly the parameters");
  Division d;
  for (const auto& v : program_variables(p)) d[v] = BindingTime::Static;
  for (const auto& v : p.params) {
    auto it = param_classes.find(v);
    if (it == param_classes.end())
      throw std::invalid_argument("analyze: missing class for parameter " + v);
    d[v] = it->second;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Block& b : p.blocks) {
      for (const Assign& a : b.assigns) {
        if (d[a.var] == BindingTime::Dynamic) continue;
        std::vector<std::string> vars;
        collect_expr_vars(a.expr, vars);
        for (const auto& v : vars) {
          if (d[v] == BindingTime::Dynamic) {
            d[a.var] = BindingTime::Dynamic;
            changed = true;
            break;
          }
        }
      }
    }
  }
  return d;
}

std::vector<Diagnostic> check_congruence(const Program& p, const Division& d) {
  std::vector<Diagnostic> out;
  for (const auto& v : program_variables(p)) {
    if (!d.count(v))
      out.push_back({"UncoveredVariable", v, "variable " + v + " missing from division"});
  }
  for (const Block& b : p.blocks) {
    for (std::size_t i = 0; i < b.assigns.size(); ++i) {
      const Assign& a = b.assigns[i];
      auto it = d.find(a.var);
      if (it == d.end() || it->second == BindingTime::Dynamic) continue;
      std::vector<std::string> vars;
      collect_expr_vars(a.expr, vars);
      for (const auto& v : vars) {
        auto vit = d.find(v);
        if (vit != d.end() && vit->second == BindingTime::Dynamic) {
          out.push_back({"CongruenceViolation", b.label + "/" + std::to_string(i),
                         "static " + a.var + " assigned from dynamic " + v});
          break;
        }
      }
    }
  }
  return out;
}

Value encode_division(const Division& d) {
  std::vector<Value> items;
  for (const auto& [v, bt] : d)
    items.push_back(Value::list(
        {Value::symbol(v), Value::symbol(bt == BindingTime::Static ? "S" : "D")}));
  return Value::list(items);
}

Division decode_division(const Value& v) {
  Division d;
  if (!v.is_seq()) throw DecodeError("division must be a sequence of (var S|D)");
  for (const Value& e : v.seq_items()) {
    std::vector<Value> pair = e.is_seq() ? e.seq_items() : std::vector<Value>{};
    if (pair.size() != 2 || !pair[0].is_symbol() || !pair[1].is_symbol())
      throw DecodeError("division entry must be (var S|D), got " + print_datum(e));
    const std::string& bt = pair[1].symbol_name();
    if (bt != "S" && bt != "D")
      throw DecodeError("binding time must be S or D, got " + bt);
    d[pair[0].symbol_name()] = bt == "S" ? BindingTime::Static : BindingTime::Dynamic;
  }
  return d;
}

std::string print_division(const Division& d) { return print_datum(encode_division(d)); }

Division parse_division(const std::string& text) { return decode_division(parse_datum(text)); }

}  // namespace futamix
