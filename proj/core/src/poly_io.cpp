#include <cctype>

#include "projdyn/error.hpp"
#include "projdyn/mpoly.hpp"

namespace projdyn {

namespace {

// Symmetric representative for prime fields keeps `-x1` readable.
std::string coefficient_text(const Scalar& c) {
  if (c.field().is_rationals()) return c.rational().get_str();
  const std::uint64_t p = c.field().characteristic();
  const std::uint64_t r = c.residue();
  return r > p / 2 ? "-" + std::to_string(p - r) : std::to_string(r);
}

class Parser {
 public:
  Parser(std::string_view text, std::size_t num_vars, const Field& field)
      : text_(text), nvars_(num_vars), field_(field) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

  std::size_t max_index_plus_one() const { return max_var_ + 1; }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("cannot parse polynomial '" + std::string(text_) + "' at offset " + std::to_string(pos_) +
                       ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc(nvars_, field_);
    bool first = true;
    for (;;) {
      bool negate = false;
      if (accept('-')) negate = true;
      else if (!accept('+') && !first) break;
      Polynomial t = term();
      acc = negate ? acc - t : acc + t;
      first = false;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        Polynomial d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division is only allowed by nonzero constants");
        acc *= d.constant_value().inverse();
      } else {
        return acc;
      }
    }
  }

  Polynomial factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    Polynomial base = primary();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 0xFFFF) fail("exponent too large");
      base = pow(base, unsigned(e));
    }
    return base;
  }

  Polynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      BigInt value(std::string(text_.substr(start, pos_ - start)));
      return Polynomial::constant(nvars_, Scalar(field_, value));
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      std::size_t index = c == 'x' ? 0 : c == 'y' ? 1 : 2;
      if (c == 'x' && pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        index = std::stoul(std::string(text_.substr(start, pos_ - start)));
      }
      if (index >= nvars_) fail("variable x" + std::to_string(index) + " outside a ring of " + std::to_string(nvars_) + " variables");
      max_var_ = std::max(max_var_, index);
      return Polynomial::variable(nvars_, field_, index);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t nvars_;
  Field field_;
  std::size_t max_var_ = 0;
};

}  // namespace

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& t : p.terms()) {
    std::string coeff = coefficient_text(t.coeff);
    std::string mono;
    for (std::size_t v = 0; v < p.num_vars(); ++v) {
      unsigned e = t.monomial[v];
      if (!e) continue;
      if (!mono.empty()) mono += '*';
      mono += 'x' + std::to_string(v);
      if (e > 1) mono += '^' + std::to_string(e);
    }
    std::string text;
    if (mono.empty()) text = coeff;
    else if (coeff == "1") text = mono;
    else if (coeff == "-1") text = "-" + mono;
    else text = coeff + "*" + mono;
    if (!out.empty() && text[0] != '-') out += '+';
    out += text;
  }
  return out;
}

Polynomial parse_polynomial(std::string_view text, std::size_t num_vars, const Field& field) {
  if (num_vars) {
    Parser parser(text, num_vars, field);
    return parser.parse();
  }
  Parser parser(text, kMaxVariables, field);
  Polynomial wide = parser.parse();
  return Polynomial::from_terms(parser.max_index_plus_one(), field, wide.terms());
}

std::vector<Polynomial> parse_polynomial_list(std::string_view text, std::size_t num_vars, const Field& field) {
  std::size_t begin = text.find_first_not_of(" \t\n");
  std::size_t end = text.find_last_not_of(" \t\n");
  if (begin == std::string_view::npos || text[begin] != '[' || text[end] != ']') {
    throw InvalidInput("expected a bracketed list like [x0^2, x1^2], got '" + std::string(text) + "'");
  }
  std::string_view body = text.substr(begin + 1, end - begin - 1);
  std::vector<std::string_view> items;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '(') ++depth;
    else if (body[i] == ')') --depth;
    else if (body[i] == ',' && depth == 0) {
      items.push_back(body.substr(start, i - start));
      start = i + 1;
    }
  }
  if (body.find_first_not_of(" \t\n") != std::string_view::npos) items.push_back(body.substr(start));
  const std::size_t n = num_vars ? num_vars : items.size();
  if (n == 0) throw InvalidInput("empty polynomial list");
  std::vector<Polynomial> out;
  out.reserve(items.size());
  for (auto item : items) out.push_back(parse_polynomial(item, n, field));
  return out;
}

}  // namespace projdyn
