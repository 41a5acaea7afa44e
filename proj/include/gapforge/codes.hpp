#pragma once

// Linear codes given by generator matrices C (N x n, codewords C m), and the
// constructions behind the hardness gadget: Hadamard, Reed-Solomon over an
// extension field, their concatenation (a balanced code), and tensor squares.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "gapforge/enumerate.hpp"
#include "gapforge/error.hpp"
#include "gapforge/field.hpp"
#include "gapforge/linalg.hpp"
#include "gapforge/rational.hpp"

namespace gapforge {

struct Limits {
  /// Largest block length (vector length) any construction may produce.
  std::size_t max_block_length = std::size_t{1} << 24;
  EnumerationOptions enumeration{};
};

struct LinearCode {
  Matrix gen;
  /// Lower bound on the minimum distance; exact when `d_exact`.
  std::optional<std::size_t> d;
  bool d_exact = false;
  /// When set, every nonzero codeword weight lies in [d, (1 + eps) d].
  std::optional<Rational> eps;

  const FieldPtr& field() const noexcept { return gen.field(); }
  std::size_t length() const noexcept { return gen.rows(); }
  std::size_t dimension() const noexcept { return gen.cols(); }

  /// Columns of the generator.
  std::vector<Vector> basis() const {
    std::vector<Vector> out;
    out.reserve(dimension());
    for (std::size_t j = 0; j < dimension(); ++j) out.push_back(gen.column(j));
    return out;
  }
};

inline Vector encode(const LinearCode& code, const Vector& message) {
  if (message.size() != code.dimension()) fail(ErrorKind::DimensionMismatch, "message length != code dimension");
  return matvec(code.gen, message);
}

inline void check_block_length(std::size_t n, const Limits& limits, const char* what) {
  if (n > limits.max_block_length)
    fail(ErrorKind::SizeCap, std::string(what) + " block length " + std::to_string(n) + " exceeds cap " +
                                 std::to_string(limits.max_block_length));
}

/// Hadamard code F_q^m -> F_q^{q^m}. Row a (coordinates = base-q digits of the
/// row index) is a^T, so codeword coordinate a is <a, message>.
inline LinearCode hadamard(const FieldPtr& field, unsigned m, const Limits& limits = {}) {
  if (m < 1) fail(ErrorKind::InvalidArgument, "hadamard needs m >= 1");
  const std::uint32_t q = field->order();
  std::size_t n_rows = 1;
  for (unsigned i = 0; i < m; ++i) {
    n_rows *= q;
    check_block_length(n_rows, limits, "hadamard");
  }
  Matrix gen(field, n_rows, m);
  for (std::size_t a = 0; a < n_rows; ++a) {
    std::size_t rest = a;
    for (unsigned i = 0; i < m; ++i) {
      gen(a, i) = static_cast<Elem>(rest % q);
      rest /= q;
    }
  }
  // A nonzero functional takes each value q^{m-1} times.
  const std::size_t d = n_rows / q * (q - 1);
  return {std::move(gen), d, true, Rational(0)};
}

/// Reed-Solomon code sending F_q-coefficients of a degree < n polynomial to
/// its evaluations at every point of F_Q (index order), Q = q^m. The base
/// field embeds into F_Q as the constant polynomials, which keeps indices.
struct ReedSolomonCode {
  FieldPtr base;
  FieldPtr ext;
  /// Q x n over F_Q; entry (alpha, j) = alpha^j.
  Matrix gen;

  Vector encode(const Vector& message) const {
    require_same_field(message.field(), base);
    if (message.size() != gen.cols()) fail(ErrorKind::DimensionMismatch, "message length != n");
    return matvec(gen, Vector(ext, std::vector<Elem>(message.entries().begin(), message.entries().end())));
  }
};

inline ReedSolomonCode reed_solomon(const FieldPtr& base, std::size_t n, unsigned m, const Limits& limits = {}) {
  auto ext = make_extension(base, m);
  const std::uint32_t big_q = ext->order();
  check_block_length(big_q, limits, "reed-solomon");
  if (n > big_q) fail(ErrorKind::DegreeTooLarge, "n exceeds the number of evaluation points");
  Matrix gen(ext, big_q, n);
  for (Elem alpha = 0; alpha < big_q; ++alpha) {
    Elem power = 1;
    for (std::size_t j = 0; j < n; ++j) {
      gen(alpha, j) = power;
      power = ext->mul(power, alpha);
    }
  }
  return {base, std::move(ext), std::move(gen)};
}

/// Minimum distance by exhaustive enumeration of the q^n - 1 nonzero messages.
inline std::optional<std::size_t> min_distance_exhaustive(const LinearCode& code,
                                                          const EnumerationOptions& opts = {}) {
  const auto basis = code.basis();
  return min_weight_over_span(code.field(), basis, nullptr, code.length(), 1, opts).weight;
}

/// weight -> number of nonzero codewords with that weight.
inline std::map<std::size_t, std::uint64_t> weight_profile(const LinearCode& code,
                                                           const EnumerationOptions& opts = {}) {
  const auto basis = code.basis();
  const auto hist = weight_histogram(code.field(), basis, code.length(), 1, opts);
  std::map<std::size_t, std::uint64_t> profile;
  for (std::size_t w = 0; w < hist.size(); ++w)
    if (hist[w] != 0) profile[w] = hist[w];
  return profile;
}

/// Analytic parameters of the concatenated construction.
struct BalancedParams {
  unsigned m;                 // smallest m with n <= eps q^m
  std::uint64_t outer_size;   // Q = q^m
  std::uint64_t block_length; // N = Q^2
  Rational low;               // (1 - eps)(1 - 1/q) N
  Rational high;              // (1 - 1/q) N
};

inline BalancedParams balanced_params(std::uint32_t q, std::size_t n, const Rational& eps) {
  if (!(eps > Rational(0)) || eps > Rational(1, 2)) fail(ErrorKind::InvalidArgument, "eps must lie in (0, 1/2]");
  if (n < 1) fail(ErrorKind::InvalidArgument, "n must be >= 1");
  BalancedParams p{};
  p.m = 0;
  p.outer_size = 1;
  while (eps * Rational(static_cast<std::int64_t>(p.outer_size)) < Rational(static_cast<std::int64_t>(n))) {
    p.outer_size *= q;
    ++p.m;
    if (p.outer_size > kMaxFieldOrder) fail(ErrorKind::SizeCap, "outer field order exceeds 2^16");
  }
  p.block_length = p.outer_size * p.outer_size;
  const Rational big_n(static_cast<std::int64_t>(p.block_length));
  const Rational inner = Rational(1) - Rational(1, q);
  p.high = inner * big_n;
  p.low = (Rational(1) - eps) * p.high;
  return p;
}

/// Reed-Solomon over F_{q^m} concatenated with the Hadamard code on F_q^m.
/// Row alpha * Q + a of the generator is the Hadamard coordinate a of the
/// outer symbol at evaluation point alpha. Nonzero weights lie in
/// [(1-eps)(1-1/q)N, (1-1/q)N], so the code is (2 eps)-balanced; the exact
/// distance replaces the analytic bound whenever q^n fits the enumeration cap.
inline LinearCode balanced_code(const FieldPtr& field, std::size_t n, const Rational& eps,
                                const Limits& limits = {}) {
  const auto params = balanced_params(field->order(), n, eps);
  check_block_length(params.block_length, limits, "balanced code");
  const auto outer = reed_solomon(field, n, params.m, limits);
  const Field& f = *field;
  const Field& ext = *outer.ext;
  const std::size_t big_q = params.outer_size;

  // Hadamard rows: coordinates of each a in F_q^m.
  std::vector<std::vector<Elem>> functionals(big_q);
  for (std::size_t a = 0; a < big_q; ++a) functionals[a] = index_to_coeffs(a, f.order(), params.m);

  Matrix gen(field, params.block_length, n);
  for (std::size_t alpha = 0; alpha < big_q; ++alpha)
    for (std::size_t j = 0; j < n; ++j) {
      const auto coords = ext.to_coords(outer.gen(alpha, j));
      for (std::size_t a = 0; a < big_q; ++a) {
        Elem acc = 0;
        for (unsigned i = 0; i < params.m; ++i) acc = f.add(acc, f.mul(functionals[a][i], coords[i]));
        gen(alpha * big_q + a, j) = acc;
      }
    }

  LinearCode code{std::move(gen), static_cast<std::size_t>(params.low.ceil()), false, eps * Rational(2)};
  try {
    if (auto exact = min_distance_exhaustive(code, limits.enumeration)) {
      code.d = *exact;
      code.d_exact = true;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EnumerationCapExceeded) throw;
  }
  return code;
}

/// {b_i (x) b_j} for all ordered pairs, i-major. Spans V (x) V.
inline std::vector<Vector> tensor_square_basis(std::span<const Vector> basis, const Limits& limits = {}) {
  std::vector<Vector> out;
  if (basis.empty()) return out;
  check_block_length(basis.front().size() * basis.front().size(), limits, "tensor square");
  out.reserve(basis.size() * basis.size());
  for (const auto& u : basis)
    for (const auto& v : basis) out.push_back(kron(u, v));
  return out;
}

/// t-fold Kronecker products of basis vectors in lexicographic order.
inline std::vector<Vector> tensor_power_basis(std::span<const Vector> basis, unsigned t, const Limits& limits = {}) {
  if (t < 1) fail(ErrorKind::InvalidArgument, "tensor power needs t >= 1");
  std::vector<Vector> out(basis.begin(), basis.end());
  if (basis.empty()) return out;
  std::size_t length = basis.front().size();
  std::size_t count = basis.size();
  for (unsigned k = 1; k < t; ++k) {
    length *= basis.front().size();
    count *= basis.size();
    check_block_length(length, limits, "tensor power");
    if (count * length > std::size_t{1} << 28) fail(ErrorKind::SizeCap, "tensor power basis too large");
    std::vector<Vector> next;
    next.reserve(out.size() * basis.size());
    for (const auto& u : out)
      for (const auto& v : basis) next.push_back(kron(u, v));
    out = std::move(next);
  }
  return out;
}

/// C (x) C, generator kron(G, G); column i*n + j encodes e_i (x) e_j.
inline LinearCode tensor_square(const LinearCode& code, const Limits& limits = {}) {
  check_block_length(code.length() * code.length(), limits, "tensor square");
  LinearCode out{kron(code.gen, code.gen), std::nullopt, false, std::nullopt};
  if (code.d) {
    out.d = *code.d * *code.d;
    out.d_exact = code.d_exact;
  }
  return out;
}

}  // namespace gapforge
