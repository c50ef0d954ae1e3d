#include "sharegraph/trs.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "sharegraph/errors.hpp"

namespace sharegraph {

Rule::Rule(Term lhs, Term rhs) : lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
  if (lhs_.is_var()) throw ValidationError("left-hand side of " + to_string(*this) + " is a variable");
  const auto lvars = lhs_.variables();
  for (auto x : rhs_.variables())
    if (std::find(lvars.begin(), lvars.end(), x) == lvars.end())
      throw ValidationError("variable " + x.name() + " of the right-hand side of " + to_string(*this) +
                            " does not occur on the left");
}

std::string to_string(const Rule& rule) { return to_string(rule.lhs()) + " -> " + to_string(rule.rhs()); }

namespace {

void collect_arities(const Term& t, const std::set<Symbol>& variables, std::map<Symbol, std::size_t>& arities) {
  if (t.is_var()) return;
  if (variables.contains(t.symbol()))
    throw ValidationError("variable " + t.name() + " used as a function symbol");
  auto [it, inserted] = arities.emplace(t.symbol(), t.arity());
  if (!inserted && it->second != t.arity())
    throw ValidationError("arity clash for " + t.name() + ": used with " + std::to_string(it->second) + " and " +
                          std::to_string(t.arity()) + " arguments");
  for (const auto& a : t.args()) collect_arities(a, variables, arities);
}

}  // namespace

Trs::Trs(std::set<Symbol> variables, std::vector<Rule> rules)
    : variables_(std::move(variables)), rules_(std::move(rules)) {
  for (const auto& r : rules_) {
    collect_arities(r.lhs(), variables_, arities_);
    collect_arities(r.rhs(), variables_, arities_);
    defined_.insert(r.lhs().symbol());
  }
}

std::vector<FunSym> Trs::signature() const {
  std::vector<FunSym> out;
  for (const auto& [s, n] : arities_) out.push_back({s, n});
  std::sort(out.begin(), out.end(), [](const FunSym& a, const FunSym& b) { return a.name() < b.name(); });
  return out;
}

std::vector<FunSym> Trs::defined_symbols() const {
  auto sig = signature();
  std::erase_if(sig, [&](const FunSym& f) { return !is_defined(f.symbol); });
  return sig;
}

std::vector<FunSym> Trs::constructors() const {
  auto sig = signature();
  std::erase_if(sig, [&](const FunSym& f) { return is_defined(f.symbol); });
  return sig;
}

std::optional<std::size_t> Trs::arity(Symbol s) const {
  auto it = arities_.find(s);
  if (it == arities_.end()) return std::nullopt;
  return it->second;
}

Trs Trs::restrict_to(const std::vector<std::size_t>& indices) const {
  std::vector<Rule> picked;
  for (auto i : indices) picked.push_back(rules_.at(i));
  return Trs(variables_, std::move(picked));
}

namespace {

enum class Tok { LParen, RParen, Comma, Arrow, Ident, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool ident_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '_': case '\'': case '.': case '+': case '*': case '^': case '!': case '?':
    case ':': case '~': case '=': case '<': case '|': case '&': case '@': case '$':
    case '%': case '/': case '\\':
      return true;
    default:
      return false;
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blank();
    const std::size_t line = line_, column = column_;
    if (pos_ >= text_.size()) return {Tok::End, "", line, column};
    const char c = text_[pos_];
    switch (c) {
      case '(': advance(); return {Tok::LParen, "(", line, column};
      case ')': advance(); return {Tok::RParen, ")", line, column};
      case ',': advance(); return {Tok::Comma, ",", line, column};
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          advance();
          advance();
          return {Tok::Arrow, "->", line, column};
        }
        break;
      default:
        break;
    }
    if (!ident_char(c)) throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    std::string ident;
    while (pos_ < text_.size() && ident_char(text_[pos_])) {
      ident += text_[pos_];
      advance();
    }
    return {Tok::Ident, std::move(ident), line, column};
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  Trs parse_file() {
    bool seen_vars = false;
    std::vector<Rule> rules;
    bool seen_rules = false;
    while (current_.kind != Tok::End) {
      expect(Tok::LParen, "'('");
      if (current_.kind != Tok::Ident) fail("expected a block keyword");
      const Token keyword = current_;
      shift();
      if (keyword.text == "VAR") {
        if (seen_vars) fail_at(keyword, "duplicate VAR block");
        if (seen_rules) fail_at(keyword, "VAR block must precede RULES");
        seen_vars = true;
        while (current_.kind == Tok::Ident) {
          variables_.insert(Symbol::intern(current_.text));
          shift();
        }
        expect(Tok::RParen, "')' closing VAR");
      } else if (keyword.text == "RULES") {
        if (seen_rules) fail_at(keyword, "duplicate RULES block");
        if (!seen_vars)
          fail_at(keyword, "missing (VAR ...) block before RULES: variable conventions are undeclared");
        seen_rules = true;
        while (current_.kind != Tok::RParen) {
          const Token start = current_;
          Term lhs = term();
          expect(Tok::Arrow, "'->'");
          Term rhs = term();
          try {
            rules.emplace_back(std::move(lhs), std::move(rhs));
          } catch (const ValidationError& e) {
            throw ValidationError(std::to_string(start.line) + ":" + std::to_string(start.column) + ": " +
                                  e.what());
          }
        }
        shift();
      } else if (keyword.text == "COMMENT") {
        skip_balanced();
      } else {
        fail_at(keyword, "unsupported block (" + keyword.text + " ...)");
      }
    }
    if (!seen_rules) throw ParseError("missing (RULES ...) block", current_.line, current_.column);
    return Trs(variables_, std::move(rules));
  }

  Term parse_single_term() {
    Term t = term();
    if (current_.kind != Tok::End) fail("trailing input after term");
    return t;
  }

  std::set<Symbol>& variables() { return variables_; }

 private:
  Term term() {
    if (current_.kind != Tok::Ident) fail("expected a term");
    const Token head = current_;
    shift();
    const Symbol sym = Symbol::intern(head.text);
    std::vector<Term> args;
    if (current_.kind == Tok::LParen) {
      shift();
      if (current_.kind != Tok::RParen) {
        args.push_back(term());
        while (current_.kind == Tok::Comma) {
          shift();
          args.push_back(term());
        }
      }
      expect(Tok::RParen, "')' or ','");
    }
    if (variables_.contains(sym)) {
      if (!args.empty()) fail_at(head, "variable " + head.text + " applied to arguments");
      return Term::var(sym);
    }
    return Term::app(sym, std::move(args));
  }

  void skip_balanced() {
    std::size_t depth = 1;
    while (depth > 0) {
      if (current_.kind == Tok::End) fail("unterminated block");
      if (current_.kind == Tok::LParen) ++depth;
      if (current_.kind == Tok::RParen) --depth;
      shift();
    }
  }

  void expect(Tok kind, const char* what) {
    if (current_.kind != kind) fail(std::string("expected ") + what);
    shift();
  }

  [[noreturn]] void fail(const std::string& message) { fail_at(current_, message); }
  [[noreturn]] void fail_at(const Token& at, const std::string& message) {
    std::string found = at.kind == Tok::End ? "end of input" : "'" + at.text + "'";
    throw ParseError(message + " (found " + found + ")", at.line, at.column);
  }

  void shift() { current_ = lexer_.next(); }

  Lexer lexer_;
  Token current_{Tok::End, "", 1, 1};
  std::set<Symbol> variables_;
};

void check_arities(const Term& t, const Trs* trs, std::map<Symbol, std::size_t>& seen) {
  if (t.is_var()) return;
  if (trs) {
    if (auto n = trs->arity(t.symbol()); n && *n != t.arity())
      throw ValidationError("arity clash for " + t.name() + ": signature has " + std::to_string(*n) +
                            " arguments, term has " + std::to_string(t.arity()));
  }
  auto [it, inserted] = seen.emplace(t.symbol(), t.arity());
  if (!inserted && it->second != t.arity()) throw ValidationError("arity clash for " + t.name() + " in term");
  for (const auto& a : t.args()) check_arities(a, trs, seen);
}

}  // namespace

Trs parse_trs(std::string_view text) { return Parser(text).parse_file(); }

Trs load_trs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trs(buf.str());
}

Term parse_term(std::string_view text, const std::set<Symbol>& variables) {
  Parser parser(text);
  parser.variables() = variables;
  Term t = parser.parse_single_term();
  std::map<Symbol, std::size_t> seen;
  check_arities(t, nullptr, seen);
  return t;
}

Term parse_term(std::string_view text, const Trs& trs) {
  Parser parser(text);
  parser.variables() = trs.variables();
  Term t = parser.parse_single_term();
  std::map<Symbol, std::size_t> seen;
  check_arities(t, &trs, seen);
  return t;
}

std::string print_trs(const Trs& trs) {
  std::vector<std::string> vars;
  for (auto v : trs.variables()) vars.push_back(v.name());
  std::sort(vars.begin(), vars.end());
  std::string out = "(VAR";
  for (const auto& v : vars) out += " " + v;
  out += ")\n(RULES\n";
  for (const auto& r : trs.rules()) out += "  " + to_string(r) + "\n";
  return out + ")\n";
}

bool is_value(const Trs& trs, const Term& t) {
  if (t.is_var()) return true;
  if (trs.is_defined(t.symbol())) return false;
  return std::all_of(t.args().begin(), t.args().end(), [&](const Term& a) { return is_value(trs, a); });
}

bool is_basic(const Trs& trs, const Term& t) {
  if (t.is_var() || !trs.is_defined(t.symbol())) return false;
  return std::all_of(t.args().begin(), t.args().end(), [&](const Term& a) { return is_value(trs, a); });
}

}  // namespace sharegraph
