#pragma once

// Boolean circuits and their compilation to homogeneous quadratic systems.
//
// Circuit text, one statement per line ('#' starts a comment):
//   name = INPUT | NOT a | AND a b | OR a b
//   OUTPUT name
// Keywords are case-insensitive; names are case-sensitive.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gapforge/error.hpp"
#include "gapforge/field.hpp"
#include "gapforge/linalg.hpp"

namespace gapforge {

enum class GateKind { Input, Not, And, Or };

constexpr std::string_view to_string(GateKind k) noexcept {
  switch (k) {
    case GateKind::Input: return "INPUT";
    case GateKind::Not: return "NOT";
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
  }
  return "?";
}

struct Gate {
  GateKind kind = GateKind::Input;
  std::size_t lhs = 0;  // operand gate indices, only meaningful per kind
  std::size_t rhs = 0;
  std::string name;

  friend bool operator==(const Gate&, const Gate&) = default;
};

class Circuit {
 public:
  Circuit() = default;

  /// Validates the DAG invariant: operands point strictly backward.
  Circuit(std::vector<Gate> gates, std::size_t output) : gates_(std::move(gates)), output_(output) {
    if (gates_.empty()) fail(ErrorKind::NoOutput, "circuit has no gates");
    if (output_ >= gates_.size()) fail(ErrorKind::InvalidArgument, "output index out of range");
    for (std::size_t k = 0; k < gates_.size(); ++k) {
      const Gate& g = gates_[k];
      if (g.kind == GateKind::Input) continue;
      if (g.lhs >= k || (g.kind != GateKind::Not && g.rhs >= k))
        fail(ErrorKind::ForwardReference, "gate " + std::to_string(k) + " references a later gate");
    }
  }

  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t output() const noexcept { return output_; }
  std::size_t size() const noexcept { return gates_.size(); }

  std::vector<std::size_t> inputs() const {
    std::vector<std::size_t> in;
    for (std::size_t k = 0; k < gates_.size(); ++k)
      if (gates_[k].kind == GateKind::Input) in.push_back(k);
    return in;
  }

  /// Canonical text form; parse(to_text()) reproduces the circuit.
  std::string to_text() const {
    std::string out;
    for (const auto& g : gates_) {
      out += g.name + " = " + std::string(to_string(g.kind));
      if (g.kind != GateKind::Input) out += " " + gates_[g.lhs].name;
      if (g.kind == GateKind::And || g.kind == GateKind::Or) out += " " + gates_[g.rhs].name;
      out += '\n';
    }
    out += "OUTPUT " + gates_[output_].name + '\n';
    return out;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::vector<Gate> gates_;
  std::size_t output_ = 0;
};

namespace detail {

inline std::string upper(std::string_view s) {
  std::string u(s);
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return u;
}

inline std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '=') {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
      if (c == '=') tokens.emplace_back("=");
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

}  // namespace detail

inline Circuit parse_circuit(std::string_view text) {
  std::vector<Gate> gates;
  std::unordered_map<std::string, std::size_t> index;
  std::optional<std::size_t> output;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = detail::tokenize(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }

    auto lookup = [&](const std::string& name) {
      auto it = index.find(name);
      if (it == index.end())
        throw ParseError(ErrorKind::ForwardReference, line_no, "'" + name + "' is not defined before use");
      return it->second;
    };

    if (detail::upper(tok[0]) == "OUTPUT") {
      if (tok.size() != 2) throw ParseError(ErrorKind::ParseError, line_no, "expected 'OUTPUT <name>'");
      if (output) throw ParseError(ErrorKind::ParseError, line_no, "more than one OUTPUT");
      output = lookup(tok[1]);
    } else {
      if (tok.size() < 3 || tok[1] != "=")
        throw ParseError(ErrorKind::ParseError, line_no, "expected '<name> = <gate>'");
      const std::string& name = tok[0];
      if (index.count(name)) throw ParseError(ErrorKind::DuplicateName, line_no, "'" + name + "' defined twice");
      const std::string kw = detail::upper(tok[2]);
      Gate g;
      g.name = name;
      std::size_t arity = 0;
      if (kw == "INPUT") {
        g.kind = GateKind::Input;
      } else if (kw == "NOT") {
        g.kind = GateKind::Not;
        arity = 1;
      } else if (kw == "AND" || kw == "OR") {
        g.kind = kw == "AND" ? GateKind::And : GateKind::Or;
        arity = 2;
      } else {
        throw ParseError(ErrorKind::ParseError, line_no, "unknown gate '" + tok[2] + "'");
      }
      if (tok.size() != 3 + arity)
        throw ParseError(ErrorKind::ParseError, line_no, kw + " takes " + std::to_string(arity) + " operand(s)");
      if (arity >= 1) g.lhs = lookup(tok[3]);
      if (arity == 2) g.rhs = lookup(tok[4]);
      index.emplace(name, gates.size());
      gates.push_back(std::move(g));
    }
    if (end == text.size()) break;
  }
  if (!output) throw ParseError(ErrorKind::NoOutput, line_no, "no OUTPUT statement");
  return Circuit(std::move(gates), *output);
}

/// Values of every gate under an assignment to the INPUT gates (in gate order).
inline std::vector<bool> eval_gates(const Circuit& c, const std::vector<bool>& assignment) {
  const auto in = c.inputs();
  if (assignment.size() != in.size())
    fail(ErrorKind::ArityMismatch,
         "expected " + std::to_string(in.size()) + " input bits, got " + std::to_string(assignment.size()));
  std::vector<bool> v(c.size());
  std::size_t next_input = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Gate& g = c.gates()[k];
    switch (g.kind) {
      case GateKind::Input: v[k] = assignment[next_input++]; break;
      case GateKind::Not: v[k] = !v[g.lhs]; break;
      case GateKind::And: v[k] = v[g.lhs] && v[g.rhs]; break;
      case GateKind::Or: v[k] = v[g.lhs] || v[g.rhs]; break;
    }
  }
  return v;
}

inline bool eval_circuit(const Circuit& c, const std::vector<bool>& assignment) {
  return eval_gates(c, assignment)[c.output()];
}

/// Homogeneous quadratic constraints Q_l(x x^T) = 0 on n_vars variables, each
/// stored as an upper-triangular coefficient matrix. The distinguished
/// variable is the one forced to 1 in YES witnesses (0-based index).
struct QuadraticSystem {
  FieldPtr field;
  std::size_t n_vars = 0;
  std::vector<Matrix> forms;
  std::size_t distinguished = 0;

  std::size_t size() const noexcept { return forms.size(); }

  bool satisfied_by(std::span<const Elem> x) const {
    for (const auto& q : forms)
      if (evaluate_quadratic(q, x) != 0) return false;
    return true;
  }

  friend bool operator==(const QuadraticSystem& a, const QuadraticSystem& b) {
    return a.n_vars == b.n_vars && a.distinguished == b.distinguished && a.forms == b.forms &&
           same_field(a.field, b.field);
  }
};

namespace detail {

/// Accumulates a quadratic polynomial in upper-triangular form.
class QuadraticBuilder {
 public:
  QuadraticBuilder(FieldPtr field, std::size_t n) : q_(std::move(field), n, n) {}

  QuadraticBuilder& term(std::size_t i, std::size_t j, bool negate = false) {
    const Field& f = *q_.field();
    if (i > j) std::swap(i, j);
    q_(i, j) = negate ? f.sub(q_(i, j), 1) : f.add(q_(i, j), 1);
    return *this;
  }
  QuadraticBuilder& minus(std::size_t i, std::size_t j) { return term(i, j, true); }

  Matrix build() { return std::move(q_); }

 private:
  Matrix q_;
};

}  // namespace detail

/// Gate variables x_1..x_n followed by z. Emits, in order: x_i(x_i - z) = 0
/// for every gate; x_k^2 - x_i x_j (AND), z^2 - x_k^2 - (z - x_i)(z - x_j)
/// (OR), z^2 - x_k^2 - x_i^2 (NOT) for each logic gate; z^2 - x_out^2.
inline QuadraticSystem circuit_to_quadratic(const Circuit& c, const FieldPtr& field) {
  const std::size_t n = c.size() + 1;
  const std::size_t z = c.size();
  QuadraticSystem sys{field, n, {}, z};
  auto form = [&] { return detail::QuadraticBuilder(field, n); };

  for (std::size_t i = 0; i < c.size(); ++i) sys.forms.push_back(form().term(i, i).minus(i, z).build());

  for (std::size_t k = 0; k < c.size(); ++k) {
    const Gate& g = c.gates()[k];
    switch (g.kind) {
      case GateKind::Input: break;
      case GateKind::And: sys.forms.push_back(form().term(k, k).minus(g.lhs, g.rhs).build()); break;
      case GateKind::Or:
        // z^2 - x_k^2 - (z^2 - z x_j - x_i z + x_i x_j)
        sys.forms.push_back(form().minus(k, k).term(g.lhs, z).term(g.rhs, z).minus(g.lhs, g.rhs).build());
        break;
      case GateKind::Not: sys.forms.push_back(form().term(z, z).minus(k, k).minus(g.lhs, g.lhs).build()); break;
    }
  }
  sys.forms.push_back(form().term(z, z).minus(c.output(), c.output()).build());
  return sys;
}

/// Lift of a satisfying circuit assignment: x = gate values, z = 1.
inline std::vector<Elem> lift_assignment(const Circuit& c, const std::vector<bool>& assignment) {
  const auto v = eval_gates(c, assignment);
  std::vector<Elem> x(c.size() + 1);
  for (std::size_t k = 0; k < c.size(); ++k) x[k] = v[k] ? 1 : 0;
  x[c.size()] = 1;
  return x;
}

}  // namespace gapforge
