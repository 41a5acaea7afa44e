#pragma once

// Brute-force ground truth. Everything here enumerates over combination
// coefficients (dimension D), never over the ambient space F_q^L.

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gapforge/codes.hpp"
#include "gapforge/enumerate.hpp"
#include "gapforge/frontend.hpp"
#include "gapforge/reduction.hpp"

namespace gapforge {

struct WeightWitness {
  /// Empty when the search space has no admissible vector (e.g. V = {0}).
  std::optional<std::size_t> weight;
  std::vector<Elem> coeffs;
  Vector vector;
};

namespace detail {

inline WeightWitness search(const FieldPtr& field, std::span<const Vector> basis, const Vector* offset,
                            std::size_t length, std::uint64_t first, const EnumerationOptions& opts) {
  const auto best = min_weight_over_span(field, basis, offset, length, first, opts);
  WeightWitness out;
  out.weight = best.weight;
  if (!best.weight) return out;
  out.coeffs = index_to_coeffs(best.index, field->order(), basis.size());
  out.vector = combine(field, basis, out.coeffs, length);
  if (offset) axpy(*field, 1, offset->entries(), out.vector.entries());
  return out;
}

}  // namespace detail

/// Minimum weight over the nonzero vectors of span(basis). The basis must be
/// linearly independent for "nonzero combination" to mean "nonzero vector".
inline WeightWitness subspace_min_weight(const FieldPtr& field, std::span<const Vector> basis, std::size_t length,
                                         const EnumerationOptions& opts = {}) {
  return detail::search(field, basis, nullptr, length, 1, opts);
}

/// Minimum weight over offset + span(hom_basis), zero combination included.
inline WeightWitness affine_min_weight(const Vector& offset, std::span<const Vector> hom_basis,
                                       const EnumerationOptions& opts = {}) {
  return detail::search(offset.field(), hom_basis, &offset, offset.size(), 0, opts);
}

/// First nonzero x (in index order) with Q_l(x x^T) = 0 for all l, optionally
/// also requiring x_dist = 1.
inline std::optional<std::vector<Elem>> quad_nonzero_solve(const QuadraticSystem& sys, bool require_distinguished,
                                                           const EnumerationOptions& opts = {}) {
  const std::uint32_t q = sys.field->order();
  const std::uint64_t total = combination_count(q, sys.n_vars, opts.cap);
  std::vector<Elem> x(sys.n_vars, 0);
  for (std::uint64_t index = 1; index < total; ++index) {
    std::size_t j = 0;
    while (x[j] == q - 1) x[j++] = 0;
    ++x[j];
    if (require_distinguished && x[sys.distinguished] != 1) continue;
    if (sys.satisfied_by(x)) return x;
  }
  return std::nullopt;
}

/// First satisfying input assignment in binary-counter order.
inline std::optional<std::vector<bool>> find_satisfying_assignment(const Circuit& c,
                                                                   std::uint64_t cap = kDefaultEnumerationCap) {
  const std::size_t inputs = c.inputs().size();
  const std::uint64_t total = combination_count(2, inputs, cap);
  std::vector<bool> a(inputs);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t i = 0; i < inputs; ++i) a[i] = (mask >> i) & 1u;
    if (eval_circuit(c, a)) return a;
  }
  return std::nullopt;
}

enum class Verdict { YesConfirmed, NoConfirmed, GapViolation, Inconclusive };

constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::YesConfirmed: return "YES_CONFIRMED";
    case Verdict::NoConfirmed: return "NO_CONFIRMED";
    case Verdict::GapViolation: return "GAP_VIOLATION";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

/// Position of an exact optimum relative to the promised thresholds.
inline Verdict classify(const std::optional<std::size_t>& value, std::uint64_t yes, std::uint64_t no) {
  if (!value) return Verdict::NoConfirmed;  // empty search space: optimum is +infinity
  if (*value <= yes) return Verdict::YesConfirmed;
  if (*value >= no) return Verdict::NoConfirmed;
  return Verdict::GapViolation;
}

struct VerifyReport {
  std::string instance_id;
  std::string kind;  // "MDP" or "NCP"
  bool oracle_ran = false;
  std::optional<std::size_t> oracle_value;
  std::uint64_t yes_threshold = 0;
  std::uint64_t no_threshold = 0;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Vector> witness;
  std::vector<Elem> witness_coeffs;
  std::optional<bool> circuit_satisfiable;
  std::chrono::milliseconds elapsed{0};
  std::string note;

  /// Line-oriented key=value text.
  std::string to_text() const {
    std::ostringstream os;
    os << "instance=" << instance_id << '\n';
    os << "kind=" << kind << '\n';
    os << "oracle_value=";
    if (!oracle_ran) os << "unknown";
    else if (oracle_value) os << *oracle_value;
    else os << "inf";
    os << '\n';
    os << "yes_threshold=" << yes_threshold << '\n';
    os << "no_threshold=" << no_threshold << '\n';
    os << "verdict=" << to_string(verdict) << '\n';
    os << "witness=";
    if (witness) {
      for (std::size_t i = 0; i < witness->size(); ++i) os << (i ? "," : "") << (*witness)[i];
    } else {
      os << "none";
    }
    os << '\n';
    os << "witness_coeffs=";
    for (std::size_t i = 0; i < witness_coeffs.size(); ++i) os << (i ? "," : "") << witness_coeffs[i];
    if (witness_coeffs.empty()) os << "none";
    os << '\n';
    if (circuit_satisfiable) os << "circuit_satisfiable=" << (*circuit_satisfiable ? "true" : "false") << '\n';
    if (!note.empty()) os << "note=" << note << '\n';
    os << "elapsed_ms=" << elapsed.count() << '\n';
    return os.str();
  }
};

namespace detail {

template <class Search>
VerifyReport verify(std::string id, std::string kind, const InstanceMeta& meta, const Circuit* ground_truth,
                    const EnumerationOptions& opts, Search&& search) {
  const auto start = std::chrono::steady_clock::now();
  VerifyReport r;
  r.instance_id = std::move(id);
  r.kind = std::move(kind);
  r.yes_threshold = meta.yes_threshold;
  r.no_threshold = meta.no_threshold;
  try {
    WeightWitness w = search();
    r.oracle_ran = true;
    r.oracle_value = w.weight;
    if (w.weight) {
      r.witness = std::move(w.vector);
      r.witness_coeffs = std::move(w.coeffs);
    }
    r.verdict = classify(r.oracle_value, meta.yes_threshold, meta.no_threshold);
    if (r.verdict == Verdict::GapViolation) r.note = "oracle value strictly between thresholds";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EnumerationCapExceeded) throw;
    r.verdict = Verdict::Inconclusive;
    r.note = e.what();
  }
  if (ground_truth) {
    try {
      r.circuit_satisfiable = find_satisfying_assignment(*ground_truth, opts.cap).has_value();
      if ((*r.circuit_satisfiable && r.verdict == Verdict::NoConfirmed) ||
          (!*r.circuit_satisfiable && r.verdict == Verdict::YesConfirmed)) {
        r.verdict = Verdict::GapViolation;
        r.note = "verdict contradicts circuit satisfiability";
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EnumerationCapExceeded) throw;
      r.verdict = Verdict::Inconclusive;
      r.note = e.what();
    }
  }
  r.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return r;
}

}  // namespace detail

inline VerifyReport verify_instance(const MDPInstance& inst, const Circuit* ground_truth = nullptr,
                                    const EnumerationOptions& opts = {}, std::string id = "mdp") {
  return detail::verify(std::move(id), "MDP", inst.meta, ground_truth, opts,
                        [&] { return subspace_min_weight(inst.field, inst.basis, inst.length, opts); });
}

inline VerifyReport verify_instance(const NCPInstance& inst, const Circuit* ground_truth = nullptr,
                                    const EnumerationOptions& opts = {}, std::string id = "ncp") {
  return detail::verify(std::move(id), "NCP", inst.meta, ground_truth, opts,
                        [&] { return affine_min_weight(inst.offset, inst.hom_basis, opts); });
}

}  // namespace gapforge
