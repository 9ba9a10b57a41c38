#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace fqinc {

/// An element of GF(p^n). The index encodes the polynomial coefficients
/// c_0..c_{n-1} as sum c_i * p^i, so 0 is the additive identity and 1 the
/// multiplicative identity in every field.
struct Elem {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(Elem, Elem) = default;
};

struct FieldSpec {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t q = 0;
  /// Low-degree-first coefficients of the monic irreducible modulus, length
  /// n + 1. For n == 1 this is the placeholder x, i.e. {0, 1}.
  std::vector<std::uint32_t> modulus;
  std::uint32_t q_mod4 = 0;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Largest field order accepted by make_field.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

/// GF(q) with table-driven arithmetic. Copies share the immutable tables.
///
/// Multiplication uses discrete log/antilog tables over a primitive element;
/// addition is modular for prime fields, XOR for characteristic 2, and goes
/// through Zech logarithms otherwise.
class Field {
 public:
  [[nodiscard]] const FieldSpec& spec() const noexcept { return tables_->spec; }
  [[nodiscard]] std::uint32_t p() const noexcept { return tables_->spec.p; }
  [[nodiscard]] std::uint32_t n() const noexcept { return tables_->spec.n; }
  [[nodiscard]] std::uint32_t q() const noexcept { return tables_->spec.q; }
  [[nodiscard]] bool odd() const noexcept { return tables_->spec.p != 2; }

  [[nodiscard]] bool contains(Elem e) const noexcept { return e.index < q(); }

  [[nodiscard]] Elem add(Elem a, Elem b) const noexcept;
  [[nodiscard]] Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  [[nodiscard]] Elem neg(Elem a) const noexcept { return Elem{tables_->neg[a.index]}; }
  [[nodiscard]] Elem mul(Elem a, Elem b) const noexcept {
    if (a.index == 0 || b.index == 0) return Elem{0};
    return Elem{tables_->exp[tables_->log[a.index] + tables_->log[b.index]]};
  }
  [[nodiscard]] Elem sqr(Elem a) const noexcept { return mul(a, a); }
  /// Throws Error(DivisionByZero) for a == 0.
  [[nodiscard]] Elem inv(Elem a) const;
  [[nodiscard]] Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  [[nodiscard]] Elem pow(Elem a, std::uint64_t e) const noexcept;

  /// The image of the integer v under Z -> GF(p) -> GF(q).
  [[nodiscard]] Elem from_int(std::int64_t v) const noexcept;

  [[nodiscard]] bool is_square(Elem e) const;

  /// All q elements in index order.
  [[nodiscard]] std::vector<Elem> elements() const;

  /// Base-p digits (polynomial coefficients, low degree first), length n.
  [[nodiscard]] std::vector<std::uint32_t> digits(Elem e) const;

  /// The primitive element the log tables are built on.
  [[nodiscard]] Elem generator() const noexcept { return Elem{tables_->exp[1]}; }

  friend bool operator==(const Field& a, const Field& b) { return a.spec() == b.spec(); }

 private:
  struct Tables {
    FieldSpec spec;
    std::vector<std::uint32_t> exp;   // length 2(q-1), exp[i] = g^i
    std::vector<std::uint32_t> log;   // log[0] unused
    std::vector<std::uint32_t> neg;
    std::vector<std::int64_t> zech;   // log(1 + g^k), -1 when 1 + g^k == 0
  };

  explicit Field(std::shared_ptr<const Tables> t) : tables_(std::move(t)) {}
  friend Field make_field(std::uint32_t p, std::uint32_t n);

  std::shared_ptr<const Tables> tables_;
};

/// Builds GF(p^n) for prime p, 1 <= n <= 4, p^n <= 2^20. The modulus is the
/// lexicographically smallest monic irreducible of degree n, comparing
/// coefficients from the constant term upward.
[[nodiscard]] Field make_field(std::uint32_t p, std::uint32_t n);

[[nodiscard]] bool is_prime(std::uint64_t v) noexcept;

/// Splits q into (p, n) when q is a prime power, otherwise returns {0, 0}.
[[nodiscard]] std::pair<std::uint32_t, std::uint32_t> prime_power_split(std::uint64_t q) noexcept;

/// Convenience: make_field from an order q instead of (p, n).
[[nodiscard]] Field make_field_of_order(std::uint64_t q);

}  // namespace fqinc
