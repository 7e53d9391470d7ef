#pragma once

#include <nlohmann/json.hpp>

#include <cctype>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "falin/errors.hpp"
#include "falin/free_poly.hpp"
#include "falin/linearize.hpp"
#include "falin/poly_map.hpp"
#include "falin/torus.hpp"

namespace falin {

// ---------------------------------------------------------------------------
// Printing

using VariableNamer = std::function<std::string(std::size_t)>;

inline VariableNamer torus_names(std::size_t torus_dim = 0) {
  // t1..tn, then s1..sn for the doubled variable set used by the axiom check.
  return [torus_dim](std::size_t k) {
    if (torus_dim != 0 && k >= torus_dim)
      return "s" + std::to_string(k - torus_dim + 1);
    return "t" + std::to_string(k + 1);
  };
}

namespace detail {

inline std::string join_factors(const Rational& magnitude, const std::vector<std::string>& factors) {
  if (factors.empty())
    return to_string(magnitude);
  std::string body;
  if (magnitude != 1)
    body = to_string(magnitude);
  for (const auto& f : factors) {
    if (!body.empty())
      body += '*';
    body += f;
  }
  return body;
}

inline void append_signed(std::string& out, bool negative, const std::string& body) {
  if (out.empty())
    out = negative ? "-" + body : body;
  else
    out += (negative ? " - " : " + ") + body;
}

inline std::vector<std::string> exponent_factors(const Exponent& e, const VariableNamer& name) {
  std::vector<std::string> f;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0)
      continue;
    f.push_back(e[k] == 1 ? name(k) : name(k) + "^" + std::to_string(e[k]));
  }
  return f;
}

inline std::vector<std::string> word_factors(const Word& w) {
  std::vector<std::string> f;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i])
      ++j;
    std::string z = "z" + std::to_string(w[i]);
    if (j - i > 1)
      z += "^" + std::to_string(j - i);
    f.push_back(std::move(z));
    i = j;
  }
  return f;
}

} // namespace detail

/// Terms in ascending exponent-lex order, e.g. "t2 - t1^2".
inline std::string format(const LaurentPoly& p, const VariableNamer& name = torus_names()) {
  if (p.is_zero())
    return "0";
  std::string out;
  for (const auto& [e, c] : p.terms())
    detail::append_signed(out, c < 0, detail::join_factors(abs(c), detail::exponent_factors(e, name)));
  return out;
}

inline std::string format(const Word& w) {
  if (w.empty())
    return "1";
  std::string out;
  for (const auto& f : detail::word_factors(w)) {
    if (!out.empty())
      out += '*';
    out += f;
  }
  return out;
}

inline std::string format(const ScalarPoly& p) {
  if (p.is_zero())
    return "0";
  std::string out;
  for (const auto& [w, c] : p.terms())
    detail::append_signed(out, c < 0, detail::join_factors(abs(c), detail::word_factors(w)));
  return out;
}

/// Monomial coefficients are hoisted in front of the word ("-1/2*t1^2*z2");
/// longer ones are parenthesized ("(t2 - t1^2)*z1^2").
inline std::string format(const ActionPoly& p, const VariableNamer& name = torus_names()) {
  if (p.is_zero())
    return "0";
  std::string out;
  for (const auto& [w, c] : p.terms()) {
    if (c.is_monomial()) {
      const auto& [e, k] = *c.terms().begin();
      auto factors = detail::exponent_factors(e, name);
      for (auto& f : detail::word_factors(w))
        factors.push_back(std::move(f));
      detail::append_signed(out, k < 0, detail::join_factors(abs(k), factors));
    } else {
      std::string body = "(" + format(c, name) + ")";
      if (!w.empty())
        body += "*" + format(w);
      detail::append_signed(out, false, body);
    }
  }
  return out;
}

template <Coefficient C>
std::string print_document(const PolyMap<C>& f, std::string_view kind) {
  std::string out = "rank " + std::to_string(f.rank()) + "\n" + std::string(kind) + "\n";
  for (std::size_t i = 0; i < f.rank(); ++i)
    out += "z" + std::to_string(i + 1) + " -> " + format(f.image(i)) + "\n";
  out += "end\n";
  return out;
}

inline std::string print(const ScalarPoly& p) { return format(p); }
inline std::string print(const ActionPoly& p) { return format(p); }
inline std::string print(const ScalarMap& f) { return print_document(f, "map"); }
inline std::string print(const TorusAction& sigma) { return print_document(sigma.map(), "action"); }

/// A commutative image (from abelianize) with torus variables first, printed
/// grouped by x-monomial in graded order.
inline std::string format_commutative(const LaurentPoly& p, std::size_t torus_dim) {
  if (p.is_zero())
    return "0";
  auto order = [](const Exponent& a, const Exponent& b) {
    int da = 0, db = 0;
    for (int v : a)
      da += v;
    for (int v : b)
      db += v;
    if (da != db)
      return da < db;
    return a > b;
  };
  std::map<Exponent, LaurentPoly, decltype(order)> grouped(order);
  for (const auto& [e, c] : p.terms()) {
    Exponent te(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(torus_dim));
    Exponent xe(e.begin() + static_cast<std::ptrdiff_t>(torus_dim), e.end());
    grouped.try_emplace(xe, LaurentPoly(torus_dim)).first->second.add_term(te, c);
  }
  auto x_name = [](std::size_t k) { return "x" + std::to_string(k + 1); };
  std::string out;
  for (const auto& [xe, coeff] : grouped) {
    auto xf = detail::exponent_factors(xe, x_name);
    if (coeff.is_monomial()) {
      const auto& [te, k] = *coeff.terms().begin();
      auto factors = detail::exponent_factors(te, torus_names());
      factors.insert(factors.end(), xf.begin(), xf.end());
      detail::append_signed(out, k < 0, detail::join_factors(abs(k), factors));
    } else {
      std::string body = "(" + format(coeff) + ")";
      for (const auto& f : xf)
        body += "*" + f;
      detail::append_signed(out, false, body);
    }
  }
  return out;
}

inline std::string describe(const AxiomWitness& w, std::size_t torus_dim) {
  const std::string z = "z" + std::to_string(w.image + 1);
  const auto names = torus_names(torus_dim);
  std::ostringstream os;
  if (w.axiom == AxiomWitness::Axiom::compatibility) {
    os << "compatibility axiom fails: coefficient of " << format(w.word) << " in image of " << z
       << ": sigma(s)(sigma(t)(" << z << ")) has " << format(w.lhs, names) << ", sigma(st)(" << z
       << ") has " << format(w.rhs, names);
  } else {
    os << "identity axiom fails: coefficient of " << format(w.word) << " in image of " << z
       << ": sigma(1)(" << z << ") has " << format(w.lhs, names) << ", expected "
       << format(w.rhs, names);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Reports

inline nlohmann::ordered_json report_json(const LinearizationReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["rank"] = r.rank;
  j["effective"] = r.effective;
  ordered_json fp = ordered_json::array();
  for (const auto& c : r.fixed_point)
    fp.push_back(to_string(c));
  j["fixed_point"] = fp;
  ordered_json bc = ordered_json::array();
  for (std::size_t i = 0; i < r.base_change.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < r.base_change.cols(); ++k)
      row.push_back(to_string(r.base_change(i, k)));
    bc.push_back(row);
  }
  j["base_change"] = bc;
  ordered_json wt = ordered_json::array();
  for (std::size_t i = 0; i < r.weights.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < r.weights.cols(); ++k)
      row.push_back(r.weights(i, k));
    wt.push_back(row);
  }
  j["weights"] = wt;
  auto images = [](const ScalarMap& f) {
    ordered_json o = ordered_json::object();
    for (std::size_t i = 0; i < f.rank(); ++i)
      o["z" + std::to_string(i + 1)] = format(f.image(i));
    return o;
  };
  if (r.beta)
    j["beta"] = images(*r.beta);
  if (r.beta_inverse)
    j["beta_inverse"] = images(*r.beta_inverse);
  j["degree"] = r.degree;
  j["verified"] = r.verified;
  return j;
}

/// Single-line JSON object; rationals as strings.
inline std::string emit_report(const LinearizationReport& r) { return report_json(r).dump(); }

inline std::string weights_json(const IntMatrix& m) {
  nlohmann::json wt = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < m.cols(); ++k)
      row.push_back(m(i, k));
    wt.push_back(row);
  }
  return wt.dump();
}

// ---------------------------------------------------------------------------
// Parsing

enum class DocumentKind { action, map };

/// Expression tree of one binding's right-hand side.
struct Expr {
  enum class Kind { number, tvar, zvar, add, sub, mul, neg, pow };
  Kind kind = Kind::number;
  Rational value;   // number
  int index = 0;    // tvar, zvar
  long exponent = 0; // pow
  std::vector<Expr> args;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Binding {
  int generator = 0;
  Expr expr;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct ActionDocument {
  std::size_t rank = 0;
  DocumentKind kind = DocumentKind::action;
  std::vector<Binding> bindings; ///< one per generator, in source order
};

namespace detail {

struct Token {
  enum class Kind { integer, zvar, tvar, keyword, symbol, arrow, newline, eof };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blanks();
      const std::size_t l = line_, c = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Token::Kind::eof, "", l, c});
        return out;
      }
      char ch = src_[pos_];
      if (ch == '\n') {
        advance();
        out.push_back({Token::Kind::newline, "\n", l, c});
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        out.push_back({Token::Kind::integer, digits(), l, c});
      } else if (ch == 'z' || ch == 't') {
        advance();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
          throw ParseError(std::string("expected index after '") + ch + "'", l, c);
        out.push_back({ch == 'z' ? Token::Kind::zvar : Token::Kind::tvar, digits(), l, c});
      } else if (std::isalpha(static_cast<unsigned char>(ch))) {
        std::string word;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
          word += src_[pos_];
          advance();
        }
        if (word != "rank" && word != "action" && word != "map" && word != "end")
          throw ParseError("unknown identifier '" + word + "'", l, c);
        out.push_back({Token::Kind::keyword, word, l, c});
      } else if (ch == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        advance();
        advance();
        out.push_back({Token::Kind::arrow, "->", l, c});
      } else if (std::string_view("+-*/^()").find(ch) != std::string_view::npos) {
        advance();
        out.push_back({Token::Kind::symbol, std::string(1, ch), l, c});
      } else {
        throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
      }
    }
  }

private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blanks() {
    while (pos_ < src_.size()) {
      char ch = src_[pos_];
      if (ch == ' ' || ch == '\t' || ch == '\r') {
        advance();
      } else if (ch == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n')
          advance();
      } else {
        break;
      }
    }
  }

  std::string digits() {
    std::string d;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      d += src_[pos_];
      advance();
    }
    return d;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
public:
  Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ActionDocument document() {
    ActionDocument doc;
    skip_newlines();
    expect_keyword("rank");
    const Token& r = expect(Token::Kind::integer, "rank value");
    doc.rank = to_index(r, "rank");
    if (doc.rank == 0 || doc.rank > max_rank)
      throw ParseError("rank must lie in 1.." + std::to_string(max_rank), r.line, r.column);
    rank_ = doc.rank;
    end_line();
    skip_newlines();
    const Token& k = peek();
    if (k.kind == Token::Kind::keyword && (k.text == "action" || k.text == "map")) {
      doc.kind = k.text == "action" ? DocumentKind::action : DocumentKind::map;
      next();
    } else {
      throw ParseError("expected 'action' or 'map'", k.line, k.column);
    }
    kind_ = doc.kind;
    end_line();

    std::vector<bool> seen(doc.rank + 1, false);
    while (true) {
      skip_newlines();
      const Token& t = peek();
      if (t.kind == Token::Kind::keyword && t.text == "end") {
        next();
        for (std::size_t g = 1; g <= doc.rank; ++g)
          if (!seen[g])
            throw ParseError("missing binding for z" + std::to_string(g), t.line, t.column);
        skip_newlines();
        const Token& tail = peek();
        if (tail.kind != Token::Kind::eof)
          throw ParseError("unexpected input after 'end'", tail.line, tail.column);
        return doc;
      }
      if (t.kind == Token::Kind::eof)
        throw ParseError("missing 'end'", t.line, t.column);
      if (t.kind != Token::Kind::zvar)
        throw ParseError("expected a binding 'zK -> expression'", t.line, t.column);
      Binding b;
      b.line = t.line;
      b.column = t.column;
      b.generator = static_cast<int>(check_index(t));
      next();
      if (seen[static_cast<std::size_t>(b.generator)])
        throw ParseError("duplicate binding for z" + std::to_string(b.generator), b.line, b.column);
      seen[static_cast<std::size_t>(b.generator)] = true;
      expect(Token::Kind::arrow, "'->'");
      b.expr = expr();
      end_line();
      doc.bindings.push_back(std::move(b));
    }
  }

private:
  const Token& peek() {
    if (depth_ > 0)
      while (tokens_[pos_].kind == Token::Kind::newline)
        ++pos_;
    return tokens_[pos_];
  }

  const Token& next() {
    const Token& t = peek();
    if (t.kind != Token::Kind::eof)
      ++pos_;
    return t;
  }

  void skip_newlines() {
    while (tokens_[pos_].kind == Token::Kind::newline)
      ++pos_;
  }

  void end_line() {
    const Token& t = peek();
    if (t.kind == Token::Kind::newline) {
      ++pos_;
      return;
    }
    if (t.kind == Token::Kind::eof)
      return;
    throw ParseError("expected end of line, found '" + t.text + "'", t.line, t.column);
  }

  const Token& expect(Token::Kind kind, const std::string& what) {
    const Token& t = peek();
    if (t.kind != kind)
      throw ParseError("expected " + what + (t.kind == Token::Kind::eof ? ", found end of input"
                                                                         : ", found '" + t.text + "'"),
                       t.line, t.column);
    return next();
  }

  void expect_keyword(const std::string& kw) {
    const Token& t = peek();
    if (t.kind != Token::Kind::keyword || t.text != kw)
      throw ParseError("expected '" + kw + "'", t.line, t.column);
    next();
  }

  bool is_symbol(const Token& t, char c) const {
    return t.kind == Token::Kind::symbol && t.text.size() == 1 && t.text[0] == c;
  }

  static std::size_t to_index(const Token& t, const std::string& what) {
    if (t.text.size() > 9)
      throw ParseError(what + " too large", t.line, t.column);
    return static_cast<std::size_t>(std::stoul(t.text));
  }

  std::size_t check_index(const Token& t) {
    const std::size_t k = to_index(t, "variable index");
    const char* prefix = t.kind == Token::Kind::zvar ? "z" : "t";
    if (k == 0)
      throw ParseError(std::string("variable ") + prefix + "0 does not exist", t.line, t.column);
    if (k > rank_)
      throw ParseError(std::string("unknown variable ") + prefix + std::to_string(k) +
                           ": index exceeds rank " + std::to_string(rank_),
                       t.line, t.column);
    return k;
  }

  Expr expr() {
    Expr lhs = term();
    while (true) {
      const Token& t = peek();
      if (!is_symbol(t, '+') && !is_symbol(t, '-'))
        return lhs;
      Expr node;
      node.kind = is_symbol(t, '+') ? Expr::Kind::add : Expr::Kind::sub;
      node.line = t.line;
      node.column = t.column;
      next();
      // Reserve first: a growing vector would copy the subtree, since
      // Expr's move constructor is not noexcept.
      node.args.reserve(2);
      node.args.push_back(std::move(lhs));
      node.args.push_back(term());
      lhs = std::move(node);
    }
  }

  Expr term() {
    Expr lhs = factor();
    while (is_symbol(peek(), '*')) {
      const Token& t = next();
      Expr node;
      node.kind = Expr::Kind::mul;
      node.line = t.line;
      node.column = t.column;
      node.args.reserve(2);
      node.args.push_back(std::move(lhs));
      node.args.push_back(factor());
      lhs = std::move(node);
    }
    return lhs;
  }

  // Unary minus applies to the whole power: -z1^2 is -(z1^2).
  Expr factor() {
    const Token& t = peek();
    if (is_symbol(t, '-')) {
      Expr node;
      node.kind = Expr::Kind::neg;
      node.line = t.line;
      node.column = t.column;
      next();
      node.args.push_back(factor());
      return node;
    }
    Expr base = atom();
    if (is_symbol(peek(), '^')) {
      const Token& caret = next();
      bool negative = false;
      if (is_symbol(peek(), '-')) {
        negative = true;
        next();
      }
      const Token& e = expect(Token::Kind::integer, "integer exponent");
      if (e.text.size() > 6)
        throw ParseError("exponent too large", e.line, e.column);
      Expr node;
      node.kind = Expr::Kind::pow;
      node.exponent = std::stol(e.text) * (negative ? -1 : 1);
      node.line = caret.line;
      node.column = caret.column;
      node.args.push_back(std::move(base));
      return node;
    }
    return base;
  }

  Expr atom() {
    const Token& t = peek();
    Expr node;
    node.line = t.line;
    node.column = t.column;
    switch (t.kind) {
    case Token::Kind::integer: {
      next();
      Integer num(t.text, 10);
      Integer den = 1;
      if (is_symbol(peek(), '/')) {
        next();
        const Token& d = expect(Token::Kind::integer, "denominator");
        den = Integer(d.text, 10);
        if (den == 0)
          throw ParseError("zero denominator", d.line, d.column);
      }
      node.kind = Expr::Kind::number;
      node.value = make_rational(num, den);
      return node;
    }
    case Token::Kind::zvar:
      next();
      node.kind = Expr::Kind::zvar;
      node.index = static_cast<int>(check_index(t));
      return node;
    case Token::Kind::tvar:
      if (kind_ == DocumentKind::map)
        throw ParseError("torus variable t" + t.text + " not allowed in a map", t.line, t.column);
      next();
      node.kind = Expr::Kind::tvar;
      node.index = static_cast<int>(check_index(t));
      return node;
    case Token::Kind::symbol:
      if (is_symbol(t, '(')) {
        next();
        ++depth_;
        Expr inner = expr();
        const Token& close = peek();
        if (!is_symbol(close, ')'))
          throw ParseError("expected ')'", close.line, close.column);
        --depth_;
        next();
        return inner;
      }
      break;
    default:
      break;
    }
    throw ParseError(t.kind == Token::Kind::eof || t.kind == Token::Kind::newline
                         ? "unexpected end of expression"
                         : "unexpected '" + t.text + "'",
                     t.line, t.column);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t rank_ = 0;
  int depth_ = 0;
  DocumentKind kind_ = DocumentKind::action;
};

inline ActionPoly evaluate(const Expr& e, std::size_t rank) {
  const LaurentRing ring{rank};
  switch (e.kind) {
  case Expr::Kind::number:
    return ActionPoly::constant(rank, ring, LaurentPoly::constant(rank, e.value));
  case Expr::Kind::tvar:
    return ActionPoly::constant(rank, ring,
                                LaurentPoly::variable(rank, static_cast<std::size_t>(e.index - 1)));
  case Expr::Kind::zvar:
    return ActionPoly::generator(rank, ring, e.index);
  case Expr::Kind::add:
  case Expr::Kind::sub: {
    // Sums parse as left-deep chains; walk the spine and add in place so
    // long documents stay linear.
    std::vector<const Expr*> spine;
    const Expr* node = &e;
    while (node->kind == Expr::Kind::add || node->kind == Expr::Kind::sub) {
      spine.push_back(node);
      node = &node->args[0];
    }
    ActionPoly sum = evaluate(*node, rank);
    for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
      const bool negate = (*it)->kind == Expr::Kind::sub;
      const ActionPoly rhs = evaluate((*it)->args[1], rank);
      for (const auto& [w, c] : rhs.terms())
        sum.add_term(w, negate ? -c : c);
    }
    return sum;
  }
  case Expr::Kind::mul:
    return evaluate(e.args[0], rank) * evaluate(e.args[1], rank);
  case Expr::Kind::neg:
    return -evaluate(e.args[0], rank);
  case Expr::Kind::pow: {
    ActionPoly base = evaluate(e.args[0], rank);
    const bool has_letters = base.degree() > 0;
    if (e.exponent > 0) {
      if (e.exponent > 256 && base.size() > 1)
        throw ParseError("exponent too large", e.line, e.column);
      ActionPoly r = ActionPoly::one(rank, ring);
      for (long i = 0; i < e.exponent; ++i)
        r = r * base;
      return r;
    }
    if (has_letters)
      throw ParseError(e.exponent < 0 ? "negative z-power" : "z-power must be a positive integer",
                       e.line, e.column);
    const LaurentPoly c = base.coefficient(Word{});
    if (e.exponent == 0) {
      if (c.is_zero())
        throw ParseError("0^0 is undefined", e.line, e.column);
      return ActionPoly::one(rank, ring);
    }
    if (!c.is_monomial())
      throw ParseError("negative power of a non-monomial", e.line, e.column);
    const auto& [exp, coeff] = *c.terms().begin();
    Exponent inv(exp.size());
    for (std::size_t k = 0; k < exp.size(); ++k)
      inv[k] = exp[k] * static_cast<int>(e.exponent);
    return ActionPoly::constant(rank, ring, LaurentPoly::monomial(inv, pow(coeff, e.exponent)));
  }
  }
  throw InvariantViolation("unknown expression node");
}

inline ScalarPoly to_scalar(const ActionPoly& p) {
  ScalarPoly r(p.rank());
  for (const auto& [w, c] : p.terms()) {
    for (const auto& [e, k] : c.terms())
      for (int v : e)
        if (v != 0)
          throw DomainError("map coefficient depends on the torus");
    r.add_term(w, c.constant_term());
  }
  return r;
}

} // namespace detail

inline ActionDocument parse(std::string_view text) {
  return detail::Parser(detail::Lexer(text).run()).document();
}

/// Images ordered by generator index.
inline std::vector<ActionPoly> evaluate(const ActionDocument& doc) {
  std::vector<ActionPoly> images(doc.rank, ActionPoly(doc.rank, LaurentRing{doc.rank}));
  for (const auto& b : doc.bindings)
    images[static_cast<std::size_t>(b.generator - 1)] = detail::evaluate(b.expr, doc.rank);
  return images;
}

inline TorusAction to_action(const ActionDocument& doc) {
  if (doc.kind != DocumentKind::action)
    throw DomainError("document is a map, not an action");
  return TorusAction(ActionMap(evaluate(doc)));
}

inline ScalarMap to_map(const ActionDocument& doc) {
  if (doc.kind != DocumentKind::map)
    throw DomainError("document is an action, not a map");
  std::vector<ScalarPoly> images;
  for (const auto& p : evaluate(doc))
    images.push_back(detail::to_scalar(p));
  return ScalarMap(std::move(images));
}

inline TorusAction parse_action(std::string_view text) { return to_action(parse(text)); }
inline ScalarMap parse_map(std::string_view text) { return to_map(parse(text)); }

/// Canonical text of any valid document.
inline std::string print(const ActionDocument& doc) {
  return doc.kind == DocumentKind::action ? print(to_action(doc)) : print(to_map(doc));
}

namespace detail {

inline ActionPoly parse_expression(std::string_view text, std::size_t rank, DocumentKind kind) {
  // Wrapped in a document with zero padding bindings; error lines are offset by 2.
  std::string padded = "rank " + std::to_string(rank) + "\n" +
                       (kind == DocumentKind::action ? "action" : "map") + "\nz1 -> " +
                       std::string(text) + "\n";
  for (std::size_t g = 2; g <= rank; ++g)
    padded += "z" + std::to_string(g) + " -> 0\n";
  padded += "end\n";
  auto parsed = parse(padded);
  return evaluate(parsed.bindings.front().expr, rank);
}

} // namespace detail

/// Single expression over rank generators with scalar coefficients.
inline ScalarPoly parse_scalar_poly(std::string_view text, std::size_t rank) {
  return detail::to_scalar(detail::parse_expression(text, rank, DocumentKind::map));
}

/// Single expression with Laurent coefficients in t_1..t_rank.
inline ActionPoly parse_action_poly(std::string_view text, std::size_t rank) {
  return detail::parse_expression(text, rank, DocumentKind::action);
}

} // namespace falin
