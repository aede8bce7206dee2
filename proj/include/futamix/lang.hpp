#ifndef FUTAMIX_LANG_HPP
#define FUTAMIX_LANG_HPP

#include "futamix/value.hpp"

#include <memory>
#include <string>
#include <vector>

namespace futamix {

// The thirteen primitive operators of L.
enum class PrimOp {
  Cons, Car, Cdr, IsAtom, Eq, Add, Sub, Mul, Quotient, Remainder, Lt, NumEq, Not,
};

const char* prim_name(PrimOp op);
bool lookup_prim(const std::string& name, PrimOp& out);
int prim_arity(PrimOp op);  // 1 or 2

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Const, Var, Prim };
  Kind kind;
  Value value;               // Const
  std::string var;           // Var
  PrimOp op = PrimOp::Cons;  // Prim
  std::vector<ExprPtr> args;

  static ExprPtr constant(Value v);
  static ExprPtr variable(std::string name);
  static ExprPtr prim(PrimOp op, std::vector<ExprPtr> args);
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

struct Jump {
  enum class Kind { Goto, If, Return };
  Kind kind = Kind::Return;
  std::string target;               // Goto
  ExprPtr cond;                     // If
  std::string then_label, else_label;
  ExprPtr ret;                      // Return

  static Jump jgoto(std::string l);
  static Jump jif(ExprPtr cond, std::string t, std::string e);
  static Jump jreturn(ExprPtr e);
};

struct Assign {
  std::string var;
  ExprPtr expr;
};

struct Block {
  std::string label;
  std::vector<Assign> assigns;
  Jump jump;
};

struct Program {
  std::vector<std::string> params;
  std::string entry;
  std::vector<Block> blocks;
};

bool operator==(const Program& a, const Program& b);
inline bool operator!=(const Program& a, const Program& b) { return !(a == b); }

struct Diagnostic {
  std::string code;      // UnboundLabel | DuplicateLabel | DuplicateParam | CongruenceViolation | UncoveredVariable
  std::string location;  // label or "label/assign-index" or param name
  std::string detail;
};

// Concrete `.fcl` syntax.
Program parse_program(const std::string& text);
std::string print_program(const Program& p);

// Program-as-data encoding: (params entry blocks), block (label assigns jump),
// assign (:= var expr), expr (quote v)|(var x)|(op name args...), jump
// (goto l)|(if e l1 l2)|(return e).
Value encode_program(const Program& p);
// Inverse of encode_program on its image.  Labels in encoded programs may be
// arbitrary data (specializer output uses whole states as labels); non-symbol
// labels are renamed g0, g1, ... in order of first occurrence.
Program decode_program(const Value& v);

// Label integrity and distinctness; does not check variable initialization.
std::vector<Diagnostic> validate(const Program& p);

// Blocks reordered into depth-first discovery order from entry (unreachable
// blocks dropped), labels renamed l0, l1, ... in that order.  Idempotent.
Program canonicalize(const Program& p);

// All variables occurring in the program: params, assignment targets, and
// variables read in expressions (sorted, unique).
std::vector<std::string> program_variables(const Program& p);

void collect_expr_vars(const ExprPtr& e, std::vector<std::string>& out);

}  // namespace futamix

#endif
