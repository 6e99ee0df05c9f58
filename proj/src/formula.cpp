#include "tlfe/formula.hpp"

#include <algorithm>
#include <cctype>

namespace tlfe {

namespace {

std::string render(FormulaKind kind, const std::string& name, const std::vector<Formula>& ops) {
  switch (kind) {
    case FormulaKind::True: return "true";
    case FormulaKind::False: return "false";
    case FormulaKind::Obs: return name;
    case FormulaKind::NegObs: return "!" + name;
    case FormulaKind::And:
    case FormulaKind::Or: {
      const char* sep = kind == FormulaKind::And ? " & " : " | ";
      std::string out = "(";
      for (std::size_t i = 0; i < ops.size(); ++i) {
        if (i) out += sep;
        out += ops[i].str();
      }
      return out + ")";
    }
    case FormulaKind::Until: return "(" + ops[0].str() + " U " + ops[1].str() + ")";
    case FormulaKind::Eventually: return "F " + ops[0].str();
  }
  return {};
}

}  // namespace

Formula Formula::make_node(FormulaKind kind, std::vector<Formula> operands) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->text = render(kind, {}, operands);
  node->operands = std::move(operands);
  return Formula(std::move(node));
}

Formula Formula::truth() {
  static const Formula t = make_node(FormulaKind::True, {});
  return t;
}

Formula Formula::falsity() {
  static const Formula f = make_node(FormulaKind::False, {});
  return f;
}

Formula Formula::obs(std::size_t index, std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = FormulaKind::Obs;
  node->atom = index;
  node->text = name;
  node->name = std::move(name);
  return Formula(std::move(node));
}

Formula Formula::neg_obs(std::size_t index, std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = FormulaKind::NegObs;
  node->atom = index;
  node->text = "!" + name;
  node->name = std::move(name);
  return Formula(std::move(node));
}

Formula Formula::conj(std::vector<Formula> operands) {
  if (operands.size() < 2) throw Error("conjunction needs two operands");
  return make_node(FormulaKind::And, std::move(operands));
}

Formula Formula::disj(std::vector<Formula> operands) {
  if (operands.size() < 2) throw Error("disjunction needs two operands");
  return make_node(FormulaKind::Or, std::move(operands));
}

Formula Formula::until(Formula lhs, Formula rhs) {
  return make_node(FormulaKind::Until, {std::move(lhs), std::move(rhs)});
}

Formula Formula::eventually(Formula sub) {
  return make_node(FormulaKind::Eventually, {std::move(sub)});
}

namespace {

Formula make_junction(std::vector<Formula> operands, FormulaKind kind) {
  const bool is_and = kind == FormulaKind::And;
  std::vector<Formula> flat;
  for (auto& op : operands) {
    if (op.kind() == kind) {
      flat.insert(flat.end(), op.operands().begin(), op.operands().end());
    } else if (is_and ? op.is_true() : op.is_false()) {
      continue;  // unit
    } else if (is_and ? op.is_false() : op.is_true()) {
      return op;  // absorbing
    } else {
      flat.push_back(std::move(op));
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.empty()) return is_and ? Formula::truth() : Formula::falsity();
  if (flat.size() == 1) return flat.front();
  return is_and ? Formula::conj(std::move(flat)) : Formula::disj(std::move(flat));
}

}  // namespace

Formula Formula::make_and(std::vector<Formula> operands) {
  return make_junction(std::move(operands), FormulaKind::And);
}

Formula Formula::make_or(std::vector<Formula> operands) {
  return make_junction(std::move(operands), FormulaKind::Or);
}

Formula Formula::make_until(Formula lhs, Formula rhs) {
  if (rhs.is_true() || rhs.is_false()) return rhs;
  if (lhs.is_false()) return rhs;
  if (lhs.is_true()) return make_eventually(std::move(rhs));
  if (lhs == rhs) return rhs;
  return until(std::move(lhs), std::move(rhs));
}

Formula Formula::make_eventually(Formula sub) {
  if (sub.is_true() || sub.is_false() || sub.kind() == FormulaKind::Eventually) return sub;
  return eventually(std::move(sub));
}

std::size_t Formula::depth() const {
  std::size_t d = 0;
  for (const auto& op : operands()) d = std::max(d, op.depth());
  return operands().empty() ? 0 : d + 1;
}

Formula canonical(const Formula& phi) {
  switch (phi.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Obs:
    case FormulaKind::NegObs:
      return phi;
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> ops;
      for (const auto& op : phi.operands()) ops.push_back(canonical(op));
      return phi.kind() == FormulaKind::And ? Formula::make_and(std::move(ops))
                                            : Formula::make_or(std::move(ops));
    }
    case FormulaKind::Until:
      return Formula::make_until(canonical(phi.lhs()), canonical(phi.rhs()));
    case FormulaKind::Eventually:
      return Formula::make_eventually(canonical(phi.sub()));
  }
  return phi;
}

namespace {

Formula progress_canonical(const Formula& phi, Letter l) {
  switch (phi.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
      return phi;
    case FormulaKind::Obs:
      return l.contains(phi.atom()) ? Formula::truth() : Formula::falsity();
    case FormulaKind::NegObs:
      return l.contains(phi.atom()) ? Formula::falsity() : Formula::truth();
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> ops;
      for (const auto& op : phi.operands()) ops.push_back(progress_canonical(op, l));
      return phi.kind() == FormulaKind::And ? Formula::make_and(std::move(ops))
                                            : Formula::make_or(std::move(ops));
    }
    case FormulaKind::Until: {
      auto stay = Formula::make_and({progress_canonical(phi.lhs(), l), phi});
      return Formula::make_or({progress_canonical(phi.rhs(), l), std::move(stay)});
    }
    case FormulaKind::Eventually:
      return Formula::make_or({progress_canonical(phi.sub(), l), phi});
  }
  return phi;
}

}  // namespace

Formula progress(const Formula& phi, Letter letter) {
  return progress_canonical(canonical(phi), letter);
}

bool is_good_prefix(const Formula& phi, std::span<const Letter> word) {
  Formula cur = canonical(phi);
  if (cur.is_true()) return true;
  for (Letter l : word) {
    cur = progress_canonical(cur, l);
    if (cur.is_true()) return true;
    if (cur.is_false()) return false;
  }
  return false;
}

std::vector<std::size_t> atoms_of(const Formula& phi) {
  std::vector<std::size_t> out;
  auto visit = [&](const auto& self, const Formula& f) -> void {
    if (f.kind() == FormulaKind::Obs || f.kind() == FormulaKind::NegObs) out.push_back(f.atom());
    for (const auto& op : f.operands()) self(self, op);
  };
  visit(visit, phi);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Atom, True, Not, Eventually, Until, And, Or, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (c >= 'a' && c <= 'z') {
      while (i < src.size() && ((src[i] >= 'a' && src[i] <= 'z') || (src[i] >= '0' && src[i] <= '9') ||
                                src[i] == '_')) {
        ++i;
      }
      std::string word(src.substr(start, i - start));
      if (word == "true") {
        out.push_back({Tok::True, word, start});
      } else if (word == "false") {
        throw ParseError("syntax error at " + std::to_string(start) +
                             ": 'false' is not part of the formula syntax",
                         start);
      } else {
        out.push_back({Tok::Atom, word, start});
      }
      continue;
    }
    if (c >= 'A' && c <= 'Z') {
      ++i;
      if (i < src.size() && std::isalnum(static_cast<unsigned char>(src[i]))) {
        throw ParseError("syntax error at " + std::to_string(start) + ": unexpected identifier", start);
      }
      switch (c) {
        case 'U': out.push_back({Tok::Until, "U", start}); continue;
        case 'F': out.push_back({Tok::Eventually, "F", start}); continue;
        case 'X':
          throw ParseError("syntax error at " + std::to_string(start) +
                               ": the Next operator 'X' is not supported in scLTL",
                           start);
        case 'G':
          throw ParseError("syntax error at " + std::to_string(start) +
                               ": the Globally operator 'G' is not supported in scLTL",
                           start);
        default:
          throw ParseError("syntax error at " + std::to_string(start) + ": unknown operator '" +
                               std::string(1, c) + "'",
                           start);
      }
    }
    ++i;
    switch (c) {
      case '!': out.push_back({Tok::Not, "!", start}); break;
      case '&': out.push_back({Tok::And, "&", start}); break;
      case '|': out.push_back({Tok::Or, "|", start}); break;
      case '(': out.push_back({Tok::LParen, "(", start}); break;
      case ')': out.push_back({Tok::RParen, ")", start}); break;
      default:
        throw ParseError("syntax error at " + std::to_string(start) + ": unexpected character '" +
                             std::string(1, c) + "'",
                         start);
    }
  }
  out.push_back({Tok::End, "", std::string_view::npos});
  return out;
}

class Parser {
 public:
  Parser(std::string_view src, const ObservationSet& alphabet)
      : tokens_(tokenize(src)), alphabet_(alphabet) {}

  Formula parse() {
    Formula f = parse_or();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    const auto& t = peek();
    if (t.kind == Tok::End) throw ParseError("syntax error at end of input: " + what, t.pos);
    throw ParseError("syntax error at " + std::to_string(t.pos) + ": " + what, t.pos);
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek().kind == Tok::Or) {
      next();
      f = Formula::disj({f, parse_and()});
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_until();
    while (peek().kind == Tok::And) {
      next();
      f = Formula::conj({f, parse_until()});
    }
    return f;
  }

  Formula parse_until() {
    Formula lhs = parse_unary();
    if (peek().kind != Tok::Until) return lhs;
    next();
    return Formula::until(lhs, parse_until());
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::Not: {
        next();
        if (peek().kind != Tok::Atom) fail("negation applies only to observations");
        const auto& t = next();
        return Formula::neg_obs(resolve(t), t.text);
      }
      case Tok::Eventually:
        next();
        return Formula::eventually(parse_unary());
      default:
        return parse_primary();
    }
  }

  Formula parse_primary() {
    switch (peek().kind) {
      case Tok::Atom: {
        const auto& t = next();
        return Formula::obs(resolve(t), t.text);
      }
      case Tok::True:
        next();
        return Formula::truth();
      case Tok::LParen: {
        next();
        Formula f = parse_or();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        next();
        return f;
      }
      case Tok::End:
        fail("expected a formula");
      default:
        fail("unexpected '" + peek().text + "'");
    }
  }

  std::size_t resolve(const Token& t) const {
    auto idx = alphabet_.index_of(t.text);
    if (!idx) {
      throw ParseError("unknown observation '" + t.text + "' at " + std::to_string(t.pos), t.pos);
    }
    return *idx;
  }

  std::vector<Token> tokens_;
  const ObservationSet& alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const ObservationSet& alphabet) {
  return Parser(text, alphabet).parse();
}

}  // namespace tlfe
