#pragma once

// Quadratic system -> MDP -> (tensor amplification) -> NCP.
//
// The MDP subspace is V = { C X C^T : X = X^T, Q_l(X) = 0 } flattened
// row-major, optionally followed by the distinguished coordinate X[z,z].
// For an eps-balanced C of distance d, rank-1 X give weight <= (1+eps)^2 d^2
// and rank >= 2 give weight >= (1+1/q) d^2, which yields the gap.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapforge/codes.hpp"
#include "gapforge/error.hpp"
#include "gapforge/frontend.hpp"
#include "gapforge/linalg.hpp"
#include "gapforge/rational.hpp"

namespace gapforge {

struct InstanceMeta {
  std::uint64_t yes_threshold = 0;
  std::uint64_t no_threshold = 0;
  std::size_t d = 0;
  Rational eps{0};
  unsigned t = 1;
  std::string provenance;

  friend bool operator==(const InstanceMeta&, const InstanceMeta&) = default;
};

struct MDPInstance {
  FieldPtr field;
  std::size_t length = 0;
  std::vector<Vector> basis;
  /// 0-based coordinate; always the last one when set.
  std::optional<std::size_t> distinguished;
  InstanceMeta meta;
  /// Symmetric X with basis[i] = flatten(C X C^T); filled by quad_to_mdp only.
  std::vector<Matrix> preimage;

  std::size_t dimension() const noexcept { return basis.size(); }
};

struct NCPInstance {
  FieldPtr field;
  std::size_t length = 0;
  Vector offset;
  std::vector<Vector> hom_basis;
  std::optional<std::size_t> distinguished;
  InstanceMeta meta;

  std::size_t dimension() const noexcept { return hom_basis.size(); }
};

struct GapThresholds {
  Rational yes_exact;  // (1+eps)^2 d^2, plus 1 with a distinguished coordinate
  Rational no_exact;   // (1+1/q) d^2
  std::uint64_t yes;   // floor(yes_exact)
  std::uint64_t no;    // ceil(no_exact)
};

/// True when (1+eps)^2 < 1 + 1/q, i.e. the rank-1 and rank >= 2 weight bands separate.
inline bool gap_is_open(std::uint32_t q, const Rational& eps) {
  const Rational one(1);
  return (one + eps) * (one + eps) < one + Rational(1, q);
}

inline GapThresholds gap_thresholds(std::uint32_t q, const Rational& eps, std::size_t d, bool distinguished) {
  if (!gap_is_open(q, eps))
    fail(ErrorKind::GapClosed, "(1+eps)^2 >= 1+1/q for eps=" + eps.str() + ", q=" + std::to_string(q));
  const Rational one(1);
  const Rational d2(static_cast<std::int64_t>(d) * static_cast<std::int64_t>(d));
  GapThresholds g;
  g.yes_exact = (one + eps) * (one + eps) * d2 + Rational(distinguished ? 1 : 0);
  g.no_exact = (one + Rational(1, q)) * d2;
  g.yes = static_cast<std::uint64_t>(g.yes_exact.floor());
  g.no = static_cast<std::uint64_t>(g.no_exact.ceil());
  return g;
}

/// No/yes ratio for codes with eps = 1/(9q): (1+1/q)/(1+1/(3q)) = 1 + 2/(3q+1).
inline Rational certified_gap_ratio(std::uint32_t q) {
  const Rational one(1);
  return (one + Rational(1, q)) / (one + Rational(1, 3 * static_cast<std::int64_t>(q)));
}

inline MDPInstance quad_to_mdp(const QuadraticSystem& sys, const LinearCode& code, bool distinguished,
                               const Limits& limits = {}) {
  require_same_field(sys.field, code.field());
  if (code.dimension() != sys.n_vars)
    fail(ErrorKind::DimensionMismatch, "code dimension " + std::to_string(code.dimension()) +
                                           " != variable count " + std::to_string(sys.n_vars));
  if (!code.d || !code.eps) fail(ErrorKind::InvalidArgument, "code must carry a distance and a balance parameter");

  const std::uint32_t q = sys.field->order();
  const auto gap = gap_thresholds(q, *code.eps, *code.d, distinguished);

  const std::size_t big_n = code.length();
  const std::size_t length = big_n * big_n + (distinguished ? 1 : 0);
  check_block_length(length, limits, "MDP");

  MDPInstance inst;
  inst.field = sys.field;
  inst.length = length;
  inst.preimage = symmetric_solution_basis(sys.field, sys.forms, sys.n_vars);
  const Matrix ct = transpose(code.gen);
  for (const Matrix& x : inst.preimage) {
    const Matrix y = matmul(matmul(code.gen, x), ct);
    Vector v(sys.field, length);
    std::copy(y.entries().begin(), y.entries().end(), v.entries().begin());
    if (distinguished) v[length - 1] = x(sys.distinguished, sys.distinguished);
    inst.basis.push_back(std::move(v));
  }
  if (distinguished) inst.distinguished = length - 1;
  inst.meta.yes_threshold = gap.yes;
  inst.meta.no_threshold = gap.no;
  inst.meta.d = *code.d;
  inst.meta.eps = *code.eps;
  inst.meta.t = 1;
  inst.meta.provenance = "quad_to_mdp n_vars=" + std::to_string(sys.n_vars) + " m=" + std::to_string(sys.size()) +
                         " N=" + std::to_string(big_n) + " d=" + std::to_string(*code.d) +
                         (code.d_exact ? " (exact)" : " (bound)") + " eps=" + code.eps->str() +
                         " rank1_bound=" + std::to_string(gap_thresholds(q, *code.eps, *code.d, false).yes);
  return inst;
}

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t base, unsigned t) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < t; ++i) {
    if (base != 0 && r > UINT64_MAX / base) fail(ErrorKind::Overflow, "threshold overflows 64 bits");
    r *= base;
  }
  return r;
}

}  // namespace detail

/// t-fold tensor power of V. Minimum weight becomes (min weight)^t; a
/// distinguished last coordinate stays last (and 1 * 1 = 1 on witnesses).
inline MDPInstance amplify(const MDPInstance& inst, unsigned t, const Limits& limits = {}) {
  if (t < 1) fail(ErrorKind::InvalidArgument, "amplification level must be >= 1");
  if (t == 1) return inst;
  if (inst.distinguished && *inst.distinguished != inst.length - 1)
    fail(ErrorKind::InvalidArgument, "distinguished coordinate must be last to survive tensoring");

  std::size_t length = 1;
  for (unsigned i = 0; i < t; ++i) {
    if (inst.length != 0 && length > limits.max_block_length / inst.length)
      fail(ErrorKind::SizeCap, "amplified block length exceeds cap");
    length *= inst.length;
  }
  check_block_length(length, limits, "amplified MDP");

  MDPInstance out;
  out.field = inst.field;
  out.length = length;
  out.basis = tensor_power_basis(inst.basis, t, limits);
  if (inst.distinguished) out.distinguished = length - 1;
  out.meta = inst.meta;
  out.meta.yes_threshold = detail::checked_pow(inst.meta.yes_threshold, t);
  out.meta.no_threshold = detail::checked_pow(inst.meta.no_threshold, t);
  out.meta.t = inst.meta.t * t;
  out.meta.provenance = inst.meta.provenance + "; amplify t=" + std::to_string(t);
  return out;
}

/// Affine slice V' = { x in V : x_dist = 1 } = v0 + span{x in V : x_dist = 0}.
/// v0 is the first basis vector with a nonzero distinguished entry, rescaled.
inline NCPInstance mdp_to_ncp(const MDPInstance& inst) {
  if (!inst.distinguished) fail(ErrorKind::InvalidArgument, "MDP instance has no distinguished coordinate");
  const std::size_t dist = *inst.distinguished;
  const Field& f = *inst.field;

  std::optional<std::size_t> pivot;
  for (std::size_t i = 0; i < inst.basis.size() && !pivot; ++i)
    if (inst.basis[i][dist] != 0) pivot = i;
  if (!pivot) fail(ErrorKind::EmptySlice, "distinguished coordinate vanishes on all of V");

  NCPInstance out;
  out.field = inst.field;
  out.length = inst.length;
  out.distinguished = dist;
  out.meta = inst.meta;
  out.meta.provenance = inst.meta.provenance + "; mdp_to_ncp";

  out.offset = inst.basis[*pivot];
  const Elem scale = f.inv(out.offset[dist]);
  for (auto& e : out.offset.entries()) e = f.mul(e, scale);

  for (std::size_t j = 0; j < inst.basis.size(); ++j) {
    if (j == *pivot) continue;
    Vector v = inst.basis[j];
    axpy(f, f.neg(v[dist]), out.offset.entries(), v.entries());
    out.hom_basis.push_back(std::move(v));
  }
  return out;
}

}  // namespace gapforge
