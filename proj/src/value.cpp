#include "futamix/value.hpp"

#include "futamix/errors.hpp"

#include <cctype>
#include <sstream>

namespace futamix {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv64(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t mix_pair(std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = a;
  h ^= b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h *= kFnvPrime;
  return h;
}

bool symbol_head_char(char c) {
  if (std::isalpha(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '_': case '+': case '-': case '*': case '=': case '<':
    case '>': case '?': case '!': case '.': case ':':
      return true;
    default:
      return false;
  }
}

bool symbol_tail_char(char c) {
  return symbol_head_char(c) || std::isdigit(static_cast<unsigned char>(c));
}

bool looks_like_integer(const std::string& s) {
  std::size_t i = (s.size() > 1 && s[0] == '-') ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

const std::shared_ptr<const Value::Node>& Value::nil_node() {
  static const std::shared_ptr<const Node> nil = [] {
    auto n = std::make_shared<Node>(Kind::Nil);
    n->hash = 0x6e696c6e696c6e69ull;
    return n;
  }();
  return nil;
}

bool Value::valid_symbol_name(const std::string& s) {
  if (s.empty()) return false;
  if (!symbol_head_char(s[0])) return false;
  for (char c : s)
    if (!symbol_tail_char(c)) return false;
  return !looks_like_integer(s);
}

Value Value::symbol(std::string name) {
  if (!valid_symbol_name(name))
    throw std::invalid_argument("invalid symbol name: \"" + name + "\"");
  auto n = std::make_shared<Node>(Kind::Symbol);
  n->hash = fnv64(kFnvOffset ^ 0x53, name.data(), name.size());
  n->sym = std::move(name);
  return Value(std::move(n));
}

Value Value::integer(BigInt v) {
  auto n = std::make_shared<Node>(Kind::Int);
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    long long small = v.convert_to<long long>();
    n->hash = fnv64(kFnvOffset ^ 0x49, &small, sizeof(small));
  } else {
    std::string s = v.str();
    n->hash = fnv64(kFnvOffset ^ 0x49, s.data(), s.size());
  }
  n->num = std::move(v);
  return Value(std::move(n));
}

Value Value::cons(const Value& head, const Value& tail) {
  if (!tail.is_seq())
    throw std::invalid_argument("cons tail must be a sequence");
  auto n = std::make_shared<Node>(Kind::Cons);
  n->hash = mix_pair(head.hash(), tail.hash());
  n->head = head.node_;
  n->tail = tail.node_;
  return Value(std::move(n));
}

Value Value::list(const std::vector<Value>& items) {
  Value out = nil();
  for (auto it = items.rbegin(); it != items.rend(); ++it) out = cons(*it, out);
  return out;
}

Value Value::list(std::initializer_list<Value> items) {
  return list(std::vector<Value>(items));
}

bool Value::operator==(const Value& other) const {
  const Node* a = node_.get();
  const Node* b = other.node_.get();
  while (true) {
    if (a == b) return true;
    if (a->hash != b->hash || a->kind != b->kind) return false;
    switch (a->kind) {
      case Kind::Symbol:
        return a->sym == b->sym;
      case Kind::Int:
        return a->num == b->num;
      case Kind::Nil:
        return true;
      case Kind::Cons:
        if (!(Value(a->head) == Value(b->head))) return false;
        a = a->tail.get();
        b = b->tail.get();
        break;
    }
  }
}

bool Value::truthy() const {
  if (is_nil()) return false;
  if (is_symbol() && symbol_name() == "false") return false;
  return true;
}

std::size_t Value::seq_length() const {
  std::size_t n = 0;
  const Node* p = node_.get();
  while (p->kind == Kind::Cons) {
    ++n;
    p = p->tail.get();
  }
  return n;
}

std::vector<Value> Value::seq_items() const {
  std::vector<Value> out;
  const Node* p = node_.get();
  while (p->kind == Kind::Cons) {
    out.push_back(Value(p->head));
    p = p->tail.get();
  }
  return out;
}

Value Value::nth(std::size_t i) const {
  Value v = *this;
  while (i-- > 0) v = v.tail();
  return v.head();
}

namespace {

void print_rec(const Value& v, std::string& out) {
  switch (v.kind()) {
    case Value::Kind::Symbol:
      out += v.symbol_name();
      break;
    case Value::Kind::Int:
      out += v.int_value().str();
      break;
    case Value::Kind::Nil:
      out += "()";
      break;
    case Value::Kind::Cons: {
      out += '(';
      Value p = v;
      bool first = true;
      while (!p.is_nil()) {
        if (!first) out += ' ';
        first = false;
        print_rec(p.head(), out);
        p = p.tail();
      }
      out += ')';
      break;
    }
  }
}

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  explicit Lexer(const std::string& t) : text(t) {}

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == ';') {
        while (pos < text.size() && text[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  struct Token {
    enum class Kind { LParen, RParen, Atom } kind;
    std::string text;
    int line;
    int col;
  };

  Token next() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of input", line, col);
    int tl = line, tc = col;
    char c = text[pos];
    if (c == '(') {
      advance();
      return {Token::Kind::LParen, "(", tl, tc};
    }
    if (c == ')') {
      advance();
      return {Token::Kind::RParen, ")", tl, tc};
    }
    std::string atom;
    while (pos < text.size()) {
      c = text[pos];
      if (c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c))) break;
      atom += c;
      advance();
    }
    return {Token::Kind::Atom, atom, tl, tc};
  }
};

Value parse_tokens(Lexer& lex) {
  auto tok = lex.next();
  using TK = Lexer::Token::Kind;
  switch (tok.kind) {
    case TK::RParen:
      throw ParseError("unexpected ')'", tok.line, tok.col);
    case TK::LParen: {
      std::vector<Value> items;
      while (true) {
        lex.skip_ws();
        if (lex.pos >= lex.text.size())
          throw ParseError("unterminated sequence", tok.line, tok.col);
        if (lex.text[lex.pos] == ')') {
          lex.advance();
          return Value::list(items);
        }
        items.push_back(parse_tokens(lex));
      }
    }
    case TK::Atom: {
      if (looks_like_integer(tok.text)) return Value::integer(BigInt(tok.text));
      if (!Value::valid_symbol_name(tok.text))
        throw ParseError("invalid token \"" + tok.text + "\"", tok.line, tok.col);
      return Value::symbol(tok.text);
    }
  }
  throw ParseError("unreachable", tok.line, tok.col);
}

}  // namespace

std::string print_datum(const Value& v) {
  std::string out;
  print_rec(v, out);
  return out;
}

Value parse_datum(const std::string& text) {
  Lexer lex(text);
  Value v = parse_tokens(lex);
  if (!lex.at_end())
    throw TrailingInput("trailing input after datum", lex.line, lex.col);
  return v;
}

const char* to_string(RunErrorKind k) {
  switch (k) {
    case RunErrorKind::UnboundVariable: return "UnboundVariable";
    case RunErrorKind::Uninitialized: return "Uninitialized";
    case RunErrorKind::TypeError: return "TypeError";
    case RunErrorKind::StepBudgetExceeded: return "StepBudgetExceeded";
  }
  return "?";
}

const char* to_string(SpecializeErrorKind k) {
  switch (k) {
    case SpecializeErrorKind::BlockBudgetExceeded: return "BlockBudgetExceeded";
    case SpecializeErrorKind::StaticStepBudgetExceeded: return "StaticStepBudgetExceeded";
    case SpecializeErrorKind::CongruenceBreach: return "CongruenceBreach";
    case SpecializeErrorKind::FoldError: return "FoldError";
    case SpecializeErrorKind::StaticUnbound: return "StaticUnbound";
  }
  return "?";
}

}  // namespace futamix
