#pragma once

// Exhaustive enumeration of a span (or an affine coset) by coefficient index.
//
// Combination index i encodes coefficients c_0..c_{D-1} as base-q digits,
// c_0 least significant. Ranges of indices are walked with an odometer that
// updates the current vector by one scaled basis vector per digit change, so
// the cost per step is proportional to the support of the basis vectors
// touched, not to D * L.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "gapforge/error.hpp"
#include "gapforge/field.hpp"
#include "gapforge/linalg.hpp"

namespace gapforge {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1ull << 22;

struct EnumerationOptions {
  std::uint64_t cap = kDefaultEnumerationCap;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
};

/// q^dim, or EnumerationCapExceeded when it exceeds the cap.
inline std::uint64_t combination_count(std::uint32_t q, std::size_t dim, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (total > cap / q) {
      fail(ErrorKind::EnumerationCapExceeded,
           std::to_string(q) + "^" + std::to_string(dim) + " combinations exceed cap " + std::to_string(cap));
    }
    total *= q;
  }
  if (total > cap) fail(ErrorKind::EnumerationCapExceeded, "combination count exceeds cap " + std::to_string(cap));
  return total;
}

inline std::vector<Elem> index_to_coeffs(std::uint64_t index, std::uint32_t q, std::size_t dim) {
  std::vector<Elem> c(dim);
  for (auto& d : c) {
    d = static_cast<Elem>(index % q);
    index /= q;
  }
  return c;
}

inline std::uint64_t coeffs_to_index(std::span<const Elem> coeffs, std::uint32_t q) {
  std::uint64_t index = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) index = index * q + coeffs[i];
  return index;
}

/// Splits [first, last) into contiguous chunks, runs `fn(lo, hi)` on each, and
/// returns the per-chunk results in chunk order.
template <class Fn>
auto run_partitioned(std::uint64_t first, std::uint64_t last, unsigned workers, Fn&& fn)
    -> std::vector<decltype(fn(first, last))> {
  using Result = decltype(fn(first, last));
  const std::uint64_t total = last > first ? last - first : 0;
  if (workers == 0) {
    // Tiny ranges are not worth a thread.
    workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, std::thread::hardware_concurrency()),
                                                            std::max<std::uint64_t>(1, total / 4096)));
  }
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(total, 1, workers));
  std::vector<Result> results(workers);
  if (workers == 1) {
    results[0] = fn(first, last);
    return results;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = first + total * w / workers;
    const std::uint64_t hi = first + total * (w + 1) / workers;
    threads.emplace_back([&, w, lo, hi] { results[w] = fn(lo, hi); });
  }
  for (auto& t : threads) t.join();
  return results;
}

/// Walks offset + sum_j c_j b_j for every index in [lo, hi) in increasing
/// order, calling visit(index, coeffs, entries, weight).
class SpanWalker {
 public:
  SpanWalker(FieldPtr field, std::span<const Vector> basis, const Vector* offset, std::size_t length)
      : field_(std::move(field)), basis_(basis), offset_(offset), length_(length) {
    for (const auto& b : basis_) {
      if (b.size() != length_) fail(ErrorKind::DimensionMismatch, "basis vectors differ in length");
      require_same_field(b.field(), field_);
    }
    if (offset_ && offset_->size() != length_) fail(ErrorKind::DimensionMismatch, "offset length");
    const Field& f = *field_;
    const std::uint32_t q = f.order();
    step_scale_.resize(q);
    for (Elem c = 0; c < q; ++c) step_scale_[c] = f.sub((c + 1) % q, c);
    support_.resize(basis_.size());
    for (std::size_t j = 0; j < basis_.size(); ++j)
      for (std::size_t l = 0; l < length_; ++l)
        if (basis_[j][l] != 0) support_[j].push_back(static_cast<std::uint32_t>(l));
  }

  template <class Visit>
  void walk(std::uint64_t lo, std::uint64_t hi, Visit&& visit) const {
    if (lo >= hi) return;
    const Field& f = *field_;
    const std::uint32_t q = f.order();
    std::vector<Elem> coeffs = index_to_coeffs(lo, q, basis_.size());
    std::vector<Elem> cur(length_, 0);
    if (offset_) std::copy(offset_->entries().begin(), offset_->entries().end(), cur.begin());
    for (std::size_t j = 0; j < basis_.size(); ++j) axpy(f, coeffs[j], basis_[j].entries(), cur);
    std::size_t w = weight(std::span<const Elem>(cur));

    auto step = [&](std::size_t j, Elem from) {
      const Elem s = step_scale_[from];
      const auto& b = basis_[j];
      for (std::uint32_t l : support_[j]) {
        const Elem old = cur[l];
        const Elem now = f.add(old, f.mul(s, b[l]));
        cur[l] = now;
        if (old == 0 && now != 0) ++w;
        else if (old != 0 && now == 0) --w;
      }
    };

    for (std::uint64_t index = lo;;) {
      visit(index, std::span<const Elem>(coeffs), std::span<const Elem>(cur), w);
      if (++index >= hi) break;
      std::size_t j = 0;
      while (coeffs[j] == q - 1) {
        step(j, q - 1);
        coeffs[j] = 0;
        ++j;
      }
      step(j, coeffs[j]);
      ++coeffs[j];
    }
  }

 private:
  FieldPtr field_;
  std::span<const Vector> basis_;
  const Vector* offset_;
  std::size_t length_;
  std::vector<Elem> step_scale_;
  std::vector<std::vector<std::uint32_t>> support_;
};

/// Lightest combination in [first, q^D); ties resolved by smallest index.
struct SpanMinimum {
  std::optional<std::size_t> weight;
  std::uint64_t index = 0;

  void absorb(const SpanMinimum& other) noexcept {
    if (!other.weight) return;
    if (!weight || *other.weight < *weight || (*other.weight == *weight && other.index < index)) *this = other;
  }
};

inline SpanMinimum min_weight_over_span(const FieldPtr& field, std::span<const Vector> basis, const Vector* offset,
                                        std::size_t length, std::uint64_t first, const EnumerationOptions& opts) {
  const std::uint64_t total = combination_count(field->order(), basis.size(), opts.cap);
  SpanWalker walker(field, basis, offset, length);
  auto chunks = run_partitioned(first, total, opts.workers, [&](std::uint64_t lo, std::uint64_t hi) {
    SpanMinimum best;
    walker.walk(lo, hi, [&](std::uint64_t index, auto, auto, std::size_t w) {
      if (!best.weight || w < *best.weight) {
        best.weight = w;
        best.index = index;
      }
    });
    return best;
  });
  SpanMinimum best;
  for (const auto& c : chunks) best.absorb(c);
  return best;
}

/// Histogram of weights over [first, q^D): result[w] = number of combinations of weight w.
inline std::vector<std::uint64_t> weight_histogram(const FieldPtr& field, std::span<const Vector> basis,
                                                   std::size_t length, std::uint64_t first,
                                                   const EnumerationOptions& opts) {
  const std::uint64_t total = combination_count(field->order(), basis.size(), opts.cap);
  SpanWalker walker(field, basis, nullptr, length);
  auto chunks = run_partitioned(first, total, opts.workers, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> hist(length + 1, 0);
    walker.walk(lo, hi, [&](std::uint64_t, auto, auto, std::size_t w) { ++hist[w]; });
    return hist;
  });
  std::vector<std::uint64_t> hist(length + 1, 0);
  for (const auto& c : chunks)
    for (std::size_t w = 0; w < c.size(); ++w) hist[w] += c[w];
  return hist;
}

}  // namespace gapforge
