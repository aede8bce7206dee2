#ifndef FUTAMIX_ERRORS_HPP
#define FUTAMIX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace futamix {

// Lexical/syntactic failure while reading datum or program text.
struct ParseError : std::runtime_error {
  int line = 0;
  int column = 0;
  ParseError(std::string msg, int line_, int column_)
      : std::runtime_error(std::move(msg)), line(line_), column(column_) {}
};

// Extra tokens after a complete datum.
struct TrailingInput : ParseError {
  using ParseError::ParseError;
};

// A primitive applied with the wrong number of arguments (parse time).
struct ArityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A Value that does not follow the program encoding.
struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed guest-language program datum.
struct WSyntaxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A shipped asset failed its integrity checks.
struct AssetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RunErrorKind {
  UnboundVariable,
  Uninitialized,
  TypeError,
  StepBudgetExceeded,
};

// Failure during interpretation of an L program.
struct RunError : std::runtime_error {
  RunErrorKind kind;
  std::string at;  // "label[/assign-index]" when known
  RunError(RunErrorKind kind_, const std::string& detail, std::string at_ = "")
      : std::runtime_error(detail), kind(kind_), at(std::move(at_)) {}
};

enum class SpecializeErrorKind {
  BlockBudgetExceeded,
  StaticStepBudgetExceeded,
  CongruenceBreach,
  FoldError,      // a primitive mis-applied while folding static code
  StaticUnbound,  // a static variable read with no binding at specialization time
};

// Failure during specialization; carries the offending specialization state.
struct SpecializeError : std::runtime_error {
  SpecializeErrorKind kind;
  std::string state;  // printed "(label vs)" of the state being processed
  SpecializeError(SpecializeErrorKind kind_, const std::string& detail, std::string state_)
      : std::runtime_error(detail), kind(kind_), state(std::move(state_)) {}
};

const char* to_string(RunErrorKind k);
const char* to_string(SpecializeErrorKind k);

}  // namespace futamix

#endif
