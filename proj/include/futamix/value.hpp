#ifndef FUTAMIX_VALUE_HPP
#define FUTAMIX_VALUE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

namespace futamix {

using BigInt = boost::multiprecision::cpp_int;

// Universal first-order datum: symbol, arbitrary-precision integer, or a
// finite sequence.  Sequences are immutable cons chains so that prepending
// shares structure; every node carries a precomputed hash so that deep
// structures compare and hash cheaply.
class Value {
 public:
  enum class Kind { Symbol, Int, Nil, Cons };

  Value() : node_(nil_node()) {}  // empty sequence

  static Value symbol(std::string name);
  static Value integer(BigInt n);
  static Value integer(long long n) { return integer(BigInt(n)); }
  static Value nil() { return Value(); }
  // head is any value; tail must be a sequence.
  static Value cons(const Value& head, const Value& tail);
  static Value list(const std::vector<Value>& items);
  static Value list(std::initializer_list<Value> items);
  static Value boolean(bool b) { return symbol(b ? "true" : "false"); }

  Kind kind() const { return node_->kind; }
  bool is_symbol() const { return kind() == Kind::Symbol; }
  bool is_int() const { return kind() == Kind::Int; }
  bool is_seq() const { return kind() == Kind::Nil || kind() == Kind::Cons; }
  bool is_nil() const { return kind() == Kind::Nil; }

  const std::string& symbol_name() const { return node_->sym; }
  const BigInt& int_value() const { return node_->num; }
  // head/tail require a non-empty sequence.
  Value head() const { return Value(node_->head); }
  Value tail() const { return Value(node_->tail); }

  std::uint64_t hash() const { return node_->hash; }
  bool operator==(const Value& other) const;
  bool operator!=(const Value& other) const { return !(*this == other); }

  // Conditional truth: the symbol `false` and the empty sequence are false.
  bool truthy() const;

  // Sequence helpers (linear walks).
  std::size_t seq_length() const;
  std::vector<Value> seq_items() const;
  Value nth(std::size_t i) const;  // i < seq_length()

  // Symbol name validity for the textual format.
  static bool valid_symbol_name(const std::string& s);

 private:
  struct Node {
    Kind kind;
    std::uint64_t hash = 0;
    std::string sym;
    BigInt num;
    std::shared_ptr<const Node> head;
    std::shared_ptr<const Node> tail;
    explicit Node(Kind k) : kind(k) {}
  };

  explicit Value(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static const std::shared_ptr<const Node>& nil_node();

  std::shared_ptr<const Node> node_;
};

// Canonical text of a value: base-10 integers, symbols verbatim, sequences
// as `(` items `)` with single spaces.
std::string print_datum(const Value& v);

// Parse a single datum; throws ParseError / TrailingInput.
Value parse_datum(const std::string& text);

struct ValueHash {
  std::size_t operator()(const Value& v) const { return static_cast<std::size_t>(v.hash()); }
};

}  // namespace futamix

#endif
