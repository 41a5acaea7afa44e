#pragma once

// Exact arithmetic in F_p and in one-level extensions F_{q^m} = F_q[x]/(f).
//
// Elements are plain integer indices in [0, q). For an extension over a base
// of size b, the index of c_0 + c_1 x + ... + c_{m-1} x^{m-1} is
// sum c_i * b^i, where each c_i is itself a base index. Because every tower
// bottoms out in F_p, the base-p digits of an index are always the prime-field
// coordinates of the element, so addition is digit-wise mod p at every level.

#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gapforge/error.hpp"

namespace gapforge {

using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Largest field order the library supports.
inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class Field {
  struct Passkey {};

 public:
  Field(Passkey, std::uint32_t p, FieldPtr base, std::vector<Elem> modulus);

  /// F_p with the trivial modulus x.
  static FieldPtr prime(std::uint32_t p);

  /// F_base[x]/(modulus). The modulus is a low-to-high coefficient list of base
  /// indices; it must be monic of degree >= 1 and irreducible over the base.
  static FieldPtr extension(FieldPtr base, std::vector<Elem> modulus);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t order() const noexcept { return q_; }
  /// Degree over the immediate base (1 for a prime field).
  unsigned degree() const noexcept { return static_cast<unsigned>(modulus_.size() - 1); }
  /// Degree over the prime subfield.
  unsigned prime_degree() const noexcept { return prime_degree_; }
  bool is_prime_field() const noexcept { return base_ == nullptr; }
  const FieldPtr& base() const noexcept { return base_; }
  const std::vector<Elem>& modulus() const noexcept { return modulus_; }

  bool contains(Elem a) const noexcept { return a < q_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }

  Elem add(Elem a, Elem b) const noexcept {
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    return digitwise(a, b, false);
  }
  Elem sub(Elem a, Elem b) const noexcept {
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + neg_table_[b]];
    return digitwise(a, b, true);
  }
  Elem neg(Elem a) const noexcept {
    if (p_ == 2) return a;
    return neg_table_[a];
  }
  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (is_prime_field()) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const {
    if (a == 0) fail(ErrorKind::DivisionByZero, "inverse of zero");
    if (is_prime_field()) return pow(a, p_ - 2);
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept {
    Elem r = 1;
    while (e != 0) {
      if (e & 1u) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// Coordinates over the immediate base in the polynomial basis 1, x, ..., x^{m-1}.
  std::vector<Elem> to_coords(Elem a) const;
  Elem from_coords(std::span<const Elem> coords) const;

  /// Header line used by every file format, e.g. `FIELD p=2 m=2 modulus=1,1,1`.
  /// Only defined for fields whose base is prime (or for prime fields).
  std::string header() const;

  friend bool same_field(const Field& a, const Field& b) noexcept;

 private:
  Elem digitwise(Elem a, Elem b, bool subtract) const noexcept {
    Elem r = 0;
    Elem place = 1;
    while (a != 0 || b != 0) {
      std::uint32_t da = a % p_;
      std::uint32_t db = b % p_;
      std::uint32_t d = subtract ? (da + p_ - db) % p_ : (da + db) % p_;
      r += d * place;
      place *= p_;
      a /= p_;
      b /= p_;
    }
    return r;
  }

  std::uint32_t p_;
  std::uint32_t q_;
  unsigned prime_degree_;
  FieldPtr base_;
  std::vector<Elem> modulus_;
  std::vector<Elem> add_table_;
  std::vector<Elem> neg_table_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
};

inline bool same_field(const Field& a, const Field& b) noexcept {
  if (&a == &b) return true;
  if (a.p_ != b.p_ || a.q_ != b.q_ || a.modulus_ != b.modulus_) return false;
  if ((a.base_ == nullptr) != (b.base_ == nullptr)) return false;
  return a.base_ == nullptr || same_field(*a.base_, *b.base_);
}

inline bool same_field(const FieldPtr& a, const FieldPtr& b) noexcept {
  return a && b && same_field(*a, *b);
}

inline void require_same_field(const FieldPtr& a, const FieldPtr& b) {
  if (!same_field(a, b)) fail(ErrorKind::FieldMismatch, "operands live in different fields");
}

// ---------------------------------------------------------------------------
// Dense polynomials over a field, low-to-high coefficient lists of indices.
// Used for modulus search and for building extension tables.

namespace poly {

inline void trim(std::vector<Elem>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Remainder of a modulo a monic-or-not nonzero divisor.
inline std::vector<Elem> mod(const Field& f, std::vector<Elem> a, const std::vector<Elem>& divisor) {
  trim(a);
  const std::size_t dd = divisor.size() - 1;
  const Elem lead_inv = f.inv(divisor.back());
  while (a.size() > dd) {
    const Elem factor = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - dd;
    for (std::size_t i = 0; i <= dd; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(factor, divisor[i]));
    trim(a);
  }
  return a;
}

inline std::vector<Elem> mul(const Field& f, const std::vector<Elem>& a, const std::vector<Elem>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Elem> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  trim(r);
  return r;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Field& f, const std::vector<Elem>& g) {
  const std::size_t deg = g.size() - 1;
  if (deg == 0) return false;
  const std::uint64_t q = f.order();
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= q;
    std::vector<Elem> divisor(d + 1, 0);
    divisor[d] = 1;
    for (std::uint64_t t = 0; t < count; ++t) {
      std::uint64_t rest = t;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<Elem>(rest % q);
        rest /= q;
      }
      if (mod(f, g, divisor).empty()) return false;
    }
  }
  return true;
}

}  // namespace poly

// ---------------------------------------------------------------------------

inline Field::Field(Passkey, std::uint32_t p, FieldPtr base, std::vector<Elem> modulus)
    : p_(p), base_(std::move(base)), modulus_(std::move(modulus)) {
  const std::uint64_t base_order = base_ ? base_->order() : p_;
  std::uint64_t q = base_ ? 1 : p_;
  if (base_) {
    for (std::size_t i = 0; i + 1 < modulus_.size(); ++i) {
      q *= base_order;
      if (q > kMaxFieldOrder) fail(ErrorKind::SizeCap, "field order exceeds 2^16");
    }
  }
  q_ = static_cast<std::uint32_t>(q);
  prime_degree_ = base_ ? base_->prime_degree() * degree() : 1;

  if (p_ != 2) {
    neg_table_.resize(q_);
    for (Elem a = 0; a < q_; ++a) neg_table_[a] = digitwise(0, a, true);
    if (q_ <= 256) {
      add_table_.resize(static_cast<std::size_t>(q_) * q_);
      for (Elem a = 0; a < q_; ++a)
        for (Elem b = 0; b < q_; ++b) add_table_[static_cast<std::size_t>(a) * q_ + b] = digitwise(a, b, false);
    }
  }
  if (!base_) return;

  // Slow multiplication through polynomial arithmetic over the base, used only
  // to find a primitive element and tabulate discrete logs.
  const Field& b = *base_;
  const unsigned m = degree();
  auto slow_mul = [&](Elem x, Elem y) {
    std::vector<Elem> px(m), py(m);
    for (unsigned i = 0; i < m; ++i) {
      px[i] = static_cast<Elem>(x % base_order);
      x = static_cast<Elem>(x / base_order);
      py[i] = static_cast<Elem>(y % base_order);
      y = static_cast<Elem>(y / base_order);
    }
    poly::trim(px);
    poly::trim(py);
    auto r = poly::mod(b, poly::mul(b, px, py), modulus_);
    Elem out = 0;
    for (std::size_t i = r.size(); i-- > 0;) out = static_cast<Elem>(out * base_order + r[i]);
    return out;
  };

  log_.assign(q_, 0);
  exp_.assign(q_ - 1, 0);
  for (Elem g = 1; g < q_; ++g) {
    Elem x = 1;
    std::uint32_t k = 0;
    bool primitive = true;
    do {
      exp_[k] = x;
      ++k;
      x = slow_mul(x, g);
      if (x == 1 && k < q_ - 1) {
        primitive = false;
        break;
      }
    } while (k < q_ - 1);
    if (primitive && x == 1) {
      for (std::uint32_t i = 0; i < q_ - 1; ++i) log_[exp_[i]] = i;
      return;
    }
  }
  fail(ErrorKind::Reducible, "no primitive element; modulus is not irreducible");
}

inline FieldPtr Field::prime(std::uint32_t p) {
  if (!is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (p > kMaxFieldOrder) fail(ErrorKind::SizeCap, "field order exceeds 2^16");
  return std::make_shared<const Field>(Passkey{}, p, nullptr, std::vector<Elem>{0, 1});
}

inline FieldPtr Field::extension(FieldPtr base, std::vector<Elem> modulus) {
  if (!base) fail(ErrorKind::InvalidArgument, "extension needs a base field");
  if (modulus.size() < 2) fail(ErrorKind::DegreeZero, "modulus must have degree >= 1");
  if (modulus.back() != 1) fail(ErrorKind::InvalidArgument, "modulus must be monic");
  for (Elem c : modulus)
    if (!base->contains(c)) fail(ErrorKind::InvalidArgument, "modulus coefficient outside the base field");
  if (!poly::is_irreducible(*base, modulus)) fail(ErrorKind::Reducible, "modulus is reducible over the base");
  const std::uint32_t p = base->characteristic();
  return std::make_shared<const Field>(Passkey{}, p, std::move(base), std::move(modulus));
}

inline std::vector<Elem> Field::to_coords(Elem a) const {
  if (!base_) fail(ErrorKind::FieldMismatch, "prime field has no base to take coordinates over");
  if (!contains(a)) fail(ErrorKind::FieldMismatch, "element outside the field");
  const Elem b = base_->order();
  std::vector<Elem> out(degree());
  for (auto& c : out) {
    c = a % b;
    a /= b;
  }
  return out;
}

inline Elem Field::from_coords(std::span<const Elem> coords) const {
  if (!base_) fail(ErrorKind::FieldMismatch, "prime field has no base to take coordinates over");
  if (coords.size() != degree()) fail(ErrorKind::DimensionMismatch, "coordinate vector has wrong length");
  Elem out = 0;
  for (std::size_t i = coords.size(); i-- > 0;) {
    if (!base_->contains(coords[i])) fail(ErrorKind::FieldMismatch, "coordinate outside the base field");
    out = out * base_->order() + coords[i];
  }
  return out;
}

inline std::string Field::header() const {
  if (base_ && !base_->is_prime_field())
    fail(ErrorKind::InvalidArgument, "only fields over a prime base have a file header");
  std::string s = "FIELD p=" + std::to_string(p_) + " m=" + std::to_string(degree()) + " modulus=";
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    if (i != 0) s += ',';
    s += std::to_string(modulus_[i]);
  }
  return s;
}

/// Monic irreducible of the given degree whose lower coefficients, read from
/// x^{m-1} down to x^0, are lexicographically smallest.
inline std::vector<Elem> smallest_irreducible(const Field& base, unsigned m) {
  if (m < 1) fail(ErrorKind::DegreeZero, "extension degree must be >= 1");
  const std::uint64_t q = base.order();
  std::uint64_t count = 1;
  for (unsigned i = 0; i < m; ++i) {
    count *= q;
    if (count > kMaxFieldOrder) fail(ErrorKind::SizeCap, "field order exceeds 2^16");
  }
  std::vector<Elem> g(m + 1, 0);
  g[m] = 1;
  for (std::uint64_t t = 0; t < count; ++t) {
    std::uint64_t rest = t;
    for (unsigned i = 0; i < m; ++i) {
      g[i] = static_cast<Elem>(rest % q);
      rest /= q;
    }
    if (poly::is_irreducible(base, g)) return g;
  }
  fail(ErrorKind::Reducible, "no irreducible polynomial found");
}

/// Degree-m extension of the base by its canonical modulus.
inline FieldPtr make_extension(FieldPtr base, unsigned m) {
  auto modulus = smallest_irreducible(*base, m);
  return Field::extension(std::move(base), std::move(modulus));
}

/// F_{p^m}: the prime field itself for m = 1, otherwise its canonical extension.
inline FieldPtr make_field(std::uint32_t p, unsigned m) {
  if (!is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (m < 1) fail(ErrorKind::DegreeZero, "extension degree must be >= 1");
  auto fp = Field::prime(p);
  if (m == 1) return fp;
  return make_extension(std::move(fp), m);
}

/// Field of the given prime-power order, e.g. 4 -> F_{2^2}.
inline FieldPtr make_field_of_order(std::uint32_t q) {
  for (std::uint32_t p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    if (!is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(q) + " is not a prime power");
    unsigned m = 0;
    std::uint32_t r = q;
    while (r % p == 0) {
      r /= p;
      ++m;
    }
    if (r != 1) fail(ErrorKind::NotPrime, std::to_string(q) + " is not a prime power");
    return make_field(p, m);
  }
  fail(ErrorKind::NotPrime, std::to_string(q) + " is not a prime power");
}

// ---------------------------------------------------------------------------

/// An element bundled with its field. Mixed-field operations throw FieldMismatch.
class FieldElem {
 public:
  FieldElem(FieldPtr field, Elem index) : field_(std::move(field)), index_(index) {
    if (!field_ || !field_->contains(index_)) fail(ErrorKind::FieldMismatch, "index outside the field");
  }

  const FieldPtr& field() const noexcept { return field_; }
  Elem index() const noexcept { return index_; }
  bool is_zero() const noexcept { return index_ == 0; }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    require_same_field(a.field_, b.field_);
    return {a.field_, a.field_->add(a.index_, b.index_)};
  }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    require_same_field(a.field_, b.field_);
    return {a.field_, a.field_->sub(a.index_, b.index_)};
  }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    require_same_field(a.field_, b.field_);
    return {a.field_, a.field_->mul(a.index_, b.index_)};
  }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    require_same_field(a.field_, b.field_);
    return {a.field_, a.field_->div(a.index_, b.index_)};
  }
  FieldElem operator-() const { return {field_, field_->neg(index_)}; }
  FieldElem inv() const { return {field_, field_->inv(index_)}; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) noexcept {
    return a.index_ == b.index_ && same_field(a.field_, b.field_);
  }

  friend std::ostream& operator<<(std::ostream& os, const FieldElem& a) { return os << a.index_; }

 private:
  FieldPtr field_;
  Elem index_;
};

/// Coordinates of an extension element over the given base field.
inline std::vector<FieldElem> to_coords(const FieldElem& a, const FieldPtr& base) {
  if (!a.field()->base()) fail(ErrorKind::FieldMismatch, "element is not in an extension field");
  require_same_field(a.field()->base(), base);
  std::vector<FieldElem> out;
  for (Elem c : a.field()->to_coords(a.index())) out.emplace_back(base, c);
  return out;
}

inline FieldElem from_coords(const FieldPtr& ext, std::span<const FieldElem> coords) {
  if (!ext->base()) fail(ErrorKind::FieldMismatch, "target is not an extension field");
  std::vector<Elem> raw;
  raw.reserve(coords.size());
  for (const auto& c : coords) {
    require_same_field(c.field(), ext->base());
    raw.push_back(c.index());
  }
  return {ext, ext->from_coords(raw)};
}

}  // namespace gapforge
