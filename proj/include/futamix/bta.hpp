#ifndef FUTAMIX_BTA_HPP
#define FUTAMIX_BTA_HPP

#include "futamix/lang.hpp"

#include <map>
#include <string>
#include <vector>

namespace futamix {

enum class BindingTime { Static, Dynamic };

// Classification of every program variable, sorted by name.
using Division = std::map<std::string, BindingTime>;

// Least-dynamic uniform congruent division: params as declared, every other
// variable starts static, assignment targets flip to dynamic when their
// right-hand side mentions a dynamic variable, to fixpoint.
Division analyze(const Program& p, const std::map<std::string, BindingTime>& param_classes);

// Empty iff d is congruent for p and covers its variables.
std::vector<Diagnostic> check_congruence(const Program& p, const Division& d);

// Textual form ((var S|D) ...) sorted by variable name.
Value encode_division(const Division& d);
Division decode_division(const Value& v);
std::string print_division(const Division& d);
Division parse_division(const std::string& text);

}  // namespace futamix

#endif
