#include "mscs/structure.hpp"

#include <algorithm>
#include <cctype>
#include <memory>

#include "mscs/error.hpp"

namespace mscs {

namespace {

void require_nonempty(std::span<const Level> x) {
  if (x.empty()) {
    throw Error(ErrorKind::EmptyVector, "state vector must not be empty");
  }
}

void require_valid_k(std::size_t k, std::size_t n) {
  if (k < 1 || k > n) {
    throw Error(ErrorKind::InvalidK, "k = " + std::to_string(k) +
                                         " must lie in [1, " +
                                         std::to_string(n) + "]");
  }
}

Level order_statistic(std::size_t k, std::vector<Level>& values) {
  // Ascending position n-k (0-based) is x_(n-k+1).
  auto nth = values.begin() + static_cast<std::ptrdiff_t>(values.size() - k);
  std::nth_element(values.begin(), nth, values.end());
  return *nth;
}

}  // namespace

StructureExpr StructureExpr::component(std::size_t index) {
  StructureExpr e;
  e.kind = NodeKind::Component;
  e.index = index;
  return e;
}

StructureExpr StructureExpr::series(std::vector<StructureExpr> children) {
  StructureExpr e;
  e.kind = NodeKind::Series;
  e.children = std::move(children);
  return e;
}

StructureExpr StructureExpr::parallel(std::vector<StructureExpr> children) {
  StructureExpr e;
  e.kind = NodeKind::Parallel;
  e.children = std::move(children);
  return e;
}

StructureExpr StructureExpr::k_out_of_n(std::size_t k,
                                        std::vector<StructureExpr> children) {
  require_valid_k(k, children.size());
  StructureExpr e;
  e.kind = NodeKind::KOutOfN;
  e.k = k;
  e.children = std::move(children);
  return e;
}

Level eval_series(std::span<const Level> x) {
  require_nonempty(x);
  return *std::min_element(x.begin(), x.end());
}

Level eval_parallel(std::span<const Level> x) {
  require_nonempty(x);
  return *std::max_element(x.begin(), x.end());
}

Level eval_k_out_of_n(std::size_t k, std::span<const Level> x) {
  require_nonempty(x);
  require_valid_k(k, x.size());
  std::vector<Level> values(x.begin(), x.end());
  return order_statistic(k, values);
}

std::size_t arity(const StructureExpr& e) {
  if (e.kind == NodeKind::Component) return e.index + 1;
  std::size_t n = 0;
  for (const auto& child : e.children) n = std::max(n, arity(child));
  return n;
}

Level eval_expr_unchecked(const StructureExpr& e, std::span<const Level> x) {
  switch (e.kind) {
    case NodeKind::Component:
      return x[e.index];
    case NodeKind::Series: {
      Level v = eval_expr_unchecked(e.children.front(), x);
      for (std::size_t c = 1; c < e.children.size(); ++c)
        v = std::min(v, eval_expr_unchecked(e.children[c], x));
      return v;
    }
    case NodeKind::Parallel: {
      Level v = eval_expr_unchecked(e.children.front(), x);
      for (std::size_t c = 1; c < e.children.size(); ++c)
        v = std::max(v, eval_expr_unchecked(e.children[c], x));
      return v;
    }
    case NodeKind::KOutOfN: {
      std::vector<Level> values;
      values.reserve(e.children.size());
      for (const auto& child : e.children)
        values.push_back(eval_expr_unchecked(child, x));
      return order_statistic(e.k, values);
    }
  }
  return 0;
}

Level eval_expr(const StructureExpr& e, std::span<const Level> x) {
  const std::size_t n = arity(e);
  if (x.size() != n) {
    throw Error(ErrorKind::ArityMismatch,
                "expression has arity " + std::to_string(n) +
                    " but the state vector has " + std::to_string(x.size()) +
                    " entries");
  }
  return eval_expr_unchecked(e, x);
}

// ---------------------------------------------------------------------------
// DSL
//
//   expr := "c" INT | "series(" list ")" | "parallel(" list ")"
//         | "koon(" INT ";" list ")"
//
// series/parallel need at least two children, koon at least one.

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  StructureExpr parse() {
    StructureExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(pos_ + 1, "expected " + expected);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek_word(std::string_view word) const {
    return text_.substr(pos_, word.size()) == word;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("'") + c + "'");
    ++pos_;
  }

  // Decimal digits; a zero value is left for the caller to judge.
  std::size_t digits() {
    skip_ws();
    std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (value > (std::size_t{1} << 40)) {
        pos_ = start;
        fail("integer of reasonable size");
      }
      value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) fail("integer");
    return value;
  }

  std::vector<StructureExpr> list(std::size_t min_children,
                                  const char* what) {
    std::vector<StructureExpr> children;
    children.push_back(expr());
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        children.push_back(expr());
        continue;
      }
      if (pos_ < text_.size() && text_[pos_] == ')' &&
          children.size() < min_children) {
        fail(std::string("',' (") + what + " needs at least " +
             std::to_string(min_children) + " children)");
      }
      break;
    }
    expect(')');
    return children;
  }

  StructureExpr expr() {
    skip_ws();
    if (peek_word("series")) {
      pos_ += 6;
      expect('(');
      return StructureExpr::series(list(2, "series"));
    }
    if (peek_word("parallel")) {
      pos_ += 8;
      expect('(');
      return StructureExpr::parallel(list(2, "parallel"));
    }
    if (peek_word("koon")) {
      pos_ += 4;
      expect('(');
      skip_ws();
      const std::size_t k_offset = pos_ + 1;
      const std::size_t k = digits();
      expect(';');
      auto children = list(1, "koon");
      if (k < 1 || k > children.size()) {
        throw Error(ErrorKind::InvalidK,
                    "koon at offset " + std::to_string(k_offset) + ": k = " +
                        std::to_string(k) + " must lie in [1, " +
                        std::to_string(children.size()) + "]");
      }
      return StructureExpr::k_out_of_n(k, std::move(children));
    }
    if (pos_ < text_.size() && text_[pos_] == 'c') {
      ++pos_;
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("component index after 'c'");
      const std::size_t start = pos_;
      const std::size_t index = digits();
      if (index == 0) {
        pos_ = start;
        fail("component index >= 1");
      }
      return StructureExpr::component(index - 1);
    }
    fail("'c<index>', 'series(', 'parallel(' or 'koon('");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void format_into(const StructureExpr& e, std::string& out) {
  auto children = [&] {
    for (std::size_t c = 0; c < e.children.size(); ++c) {
      if (c) out += ", ";
      format_into(e.children[c], out);
    }
    out += ')';
  };
  switch (e.kind) {
    case NodeKind::Component:
      out += 'c';
      out += std::to_string(e.index + 1);
      break;
    case NodeKind::Series:
      out += "series(";
      children();
      break;
    case NodeKind::Parallel:
      out += "parallel(";
      children();
      break;
    case NodeKind::KOutOfN:
      out += "koon(";
      out += std::to_string(e.k);
      out += "; ";
      children();
      break;
  }
}

}  // namespace

StructureExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string format_expr(const StructureExpr& e) {
  std::string out;
  format_into(e, out);
  return out;
}

// ---------------------------------------------------------------------------

StructureFunction::StructureFunction(std::size_t arity, Callable fn,
                                     std::string name)
    : arity_(arity), fn_(std::move(fn)), name_(std::move(name)) {
  if (arity_ == 0) {
    throw Error(ErrorKind::EmptyVector, "structure function needs arity >= 1");
  }
}

StructureFunction StructureFunction::from_expr(const StructureExpr& e) {
  return from_expr(e, mscs::arity(e));
}

StructureFunction StructureFunction::from_expr(const StructureExpr& e,
                                               std::size_t n) {
  if (n < mscs::arity(e)) {
    throw Error(ErrorKind::ArityMismatch,
                "declared " + std::to_string(n) +
                    " components but the expression references c" +
                    std::to_string(mscs::arity(e)));
  }
  auto shared = std::make_shared<const StructureExpr>(e);
  return StructureFunction(
      n,
      [shared](std::span<const Level> x) {
        return eval_expr_unchecked(*shared, x);
      },
      format_expr(e));
}

StructureFunction StructureFunction::series(std::size_t n) {
  return StructureFunction(
      n, [](std::span<const Level> x) { return eval_series(x); },
      "series/" + std::to_string(n));
}

StructureFunction StructureFunction::parallel(std::size_t n) {
  return StructureFunction(
      n, [](std::span<const Level> x) { return eval_parallel(x); },
      "parallel/" + std::to_string(n));
}

StructureFunction StructureFunction::k_out_of_n(std::size_t k, std::size_t n) {
  require_valid_k(k, n);
  return StructureFunction(
      n, [k](std::span<const Level> x) { return eval_k_out_of_n(k, x); },
      "koon(" + std::to_string(k) + ")/" + std::to_string(n));
}

Level StructureFunction::operator()(const StateVector& x) const {
  if (x.size() != arity_) {
    throw Error(ErrorKind::ArityMismatch,
                name_ + " has arity " + std::to_string(arity_) +
                    " but the state vector has " + std::to_string(x.size()) +
                    " entries");
  }
  return fn_(x.levels());
}

}  // namespace mscs
