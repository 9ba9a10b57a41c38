#include "fqinc/ffield.hpp"

#include <string>

#include "fqinc/error.hpp"

namespace fqinc {

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first

Poly decode(std::uint32_t index, std::uint32_t p, std::uint32_t n) {
  Poly c(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    c[i] = index % p;
    index /= p;
  }
  return c;
}

std::uint32_t encode(const Poly& c, std::uint32_t p) {
  std::uint32_t index = 0;
  for (std::size_t i = c.size(); i-- > 0;) index = index * p + c[i];
  return index;
}

// Schoolbook product reduced by a monic modulus. Only used while building
// tables, so clarity wins over speed.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, const FieldSpec& f) {
  const auto p = f.p;
  const auto n = f.n;
  if (n == 1) return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p);
  Poly x = decode(a, p, n);
  Poly y = decode(b, p, n);
  Poly prod(2 * n - 1, 0);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  for (std::size_t d = prod.size(); d-- > n;) {
    const std::uint32_t lead = prod[d];
    if (lead == 0) continue;
    // x^n == -(m_0 + ... + m_{n-1} x^{n-1})
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint32_t sub = (lead * f.modulus[i]) % p;
      auto& slot = prod[d - n + i];
      slot = (slot + p - sub) % p;
    }
    prod[d] = 0;
  }
  prod.resize(n);
  return encode(prod, p);
}

std::uint32_t slow_pow(std::uint32_t a, std::uint64_t e, const FieldSpec& f) {
  std::uint32_t result = 1;
  while (e > 0) {
    if (e & 1U) result = slow_mul(result, a, f);
    a = slow_mul(a, a, f);
    e >>= 1U;
  }
  return result;
}

std::uint32_t eval_mod_p(const Poly& c, std::uint32_t x, std::uint32_t p) {
  std::uint64_t acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % p;
  return static_cast<std::uint32_t>(acc);
}

bool has_root(const Poly& c, std::uint32_t p) {
  for (std::uint32_t x = 0; x < p; ++x)
    if (eval_mod_p(c, x, p) == 0) return true;
  return false;
}

// Remainder of a monic f modulo a monic g, coefficients mod p.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  const std::size_t dg = g.size() - 1;
  for (std::size_t d = f.size(); d-- > dg;) {
    const std::uint32_t lead = f[d] % p;
    if (lead == 0) continue;
    for (std::size_t i = 0; i <= dg; ++i) {
      auto& slot = f[d - dg + i];
      slot = (slot + p - (lead * g[i]) % p) % p;
    }
  }
  f.resize(dg);
  return f;
}

bool is_zero(const Poly& c) {
  for (auto v : c)
    if (v != 0) return false;
  return true;
}

// Degree <= 3: irreducible iff rootless. Degree 4 additionally needs no
// irreducible quadratic factor.
bool irreducible(const Poly& f, std::uint32_t p) {
  if (has_root(f, p)) return false;
  if (f.size() - 1 < 4) return true;
  for (std::uint32_t c0 = 0; c0 < p; ++c0) {
    for (std::uint32_t c1 = 0; c1 < p; ++c1) {
      Poly g{c0, c1, 1};
      if (has_root(g, p)) continue;
      if (is_zero(poly_mod(f, g, p))) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d != 0) continue;
    out.push_back(d);
    while (v % d == 0) v /= d;
  }
  if (v > 1) out.push_back(v);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t v) noexcept {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power_split(std::uint64_t q) noexcept {
  if (q < 2 || q > kMaxFieldOrder) return {0, 0};
  for (std::uint64_t p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    if (!is_prime(p)) return {0, 0};
    std::uint32_t n = 0;
    while (q % p == 0) {
      q /= p;
      ++n;
    }
    if (q != 1) return {0, 0};
    return {static_cast<std::uint32_t>(p), n};
  }
  return {0, 0};
}

Field make_field(std::uint32_t p, std::uint32_t n) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (n < 1 || n > 4)
    throw Error(ErrorCode::DegreeOutOfRange, "degree " + std::to_string(n) + " outside [1, 4]");
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    order *= p;
    if (order > kMaxFieldOrder)
      throw Error(ErrorCode::DegreeOutOfRange, "p^n exceeds 2^20");
  }

  Field::Tables t;
  t.spec.p = p;
  t.spec.n = n;
  t.spec.q = static_cast<std::uint32_t>(order);
  t.spec.q_mod4 = t.spec.q % 4;
  const std::uint32_t q = t.spec.q;

  if (n == 1) {
    t.spec.modulus = {0, 1};
  } else {
    // Lexicographic in (c_0, c_1, ..., c_{n-1}) with c_0 most significant.
    for (std::uint32_t idx = 0; idx < q && t.spec.modulus.empty(); ++idx) {
      Poly f(n + 1);
      std::uint32_t rest = idx;
      for (std::uint32_t j = n; j-- > 0;) {
        f[j] = rest % p;
        rest /= p;
      }
      f[n] = 1;
      if (irreducible(f, p)) t.spec.modulus = f;
    }
    if (t.spec.modulus.empty())
      throw Error(ErrorCode::NoIrreducibleFound, "no irreducible of degree " + std::to_string(n));
  }

  const std::uint32_t order_mult = q - 1;
  std::uint32_t gen = 1;
  if (order_mult > 1) {
    const auto factors = prime_factors(order_mult);
    gen = 0;
    for (std::uint32_t g = 2; g < q && gen == 0; ++g) {
      bool primitive = true;
      for (auto r : factors) {
        if (slow_pow(g, order_mult / r, t.spec) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) gen = g;
    }
    if (gen == 0) throw Error(ErrorCode::InvariantFailure, "no primitive element found");
  }

  t.exp.resize(2 * std::size_t{order_mult});
  t.log.assign(q, 0);
  std::uint32_t cur = 1;
  for (std::uint32_t i = 0; i < order_mult; ++i) {
    t.exp[i] = cur;
    t.exp[i + order_mult] = cur;
    t.log[cur] = i;
    cur = slow_mul(cur, gen, t.spec);
  }

  t.neg.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    Poly c = decode(a, p, n);
    for (auto& v : c) v = (p - v) % p;
    t.neg[a] = encode(c, p);
  }

  if (n > 1 && p != 2) {
    t.zech.resize(order_mult);
    for (std::uint32_t k = 0; k < order_mult; ++k) {
      Poly c = decode(t.exp[k], p, n);
      c[0] = (c[0] + 1) % p;
      const std::uint32_t v = encode(c, p);
      t.zech[k] = v == 0 ? -1 : static_cast<std::int64_t>(t.log[v]);
    }
  }

  return Field(std::make_shared<const Field::Tables>(std::move(t)));
}

Field make_field_of_order(std::uint64_t q) {
  const auto [p, n] = prime_power_split(q);
  if (p == 0) {
    if (q >= 2 && q <= kMaxFieldOrder)
      throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
    throw Error(ErrorCode::DegreeOutOfRange, "field order " + std::to_string(q) + " out of range");
  }
  return make_field(p, n);
}

Elem Field::add(Elem a, Elem b) const noexcept {
  const auto& s = tables_->spec;
  if (s.n == 1) {
    const std::uint32_t sum = a.index + b.index;
    return Elem{sum >= s.p ? sum - s.p : sum};
  }
  if (s.p == 2) return Elem{a.index ^ b.index};
  if (a.index == 0) return b;
  if (b.index == 0) return a;
  const std::uint32_t m = s.q - 1;
  const std::uint32_t la = tables_->log[a.index];
  const std::uint32_t lb = tables_->log[b.index];
  const std::uint32_t k = lb >= la ? lb - la : lb + m - la;
  const std::int64_t z = tables_->zech[k];
  if (z < 0) return Elem{0};
  return Elem{tables_->exp[la + static_cast<std::uint32_t>(z)]};
}

Elem Field::inv(Elem a) const {
  if (a.index == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const std::uint32_t m = q() - 1;
  const std::uint32_t l = tables_->log[a.index];
  return Elem{tables_->exp[l == 0 ? 0 : m - l]};
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  if (e == 0) return Elem{1};
  if (a.index == 0) return Elem{0};
  const std::uint64_t m = q() - 1;
  const std::uint64_t l = (std::uint64_t{tables_->log[a.index]} * (e % m)) % m;
  return Elem{tables_->exp[l]};
}

Elem Field::from_int(std::int64_t v) const noexcept {
  const auto pp = static_cast<std::int64_t>(p());
  return Elem{static_cast<std::uint32_t>(((v % pp) + pp) % pp)};
}

bool Field::is_square(Elem e) const {
  if (e.index == 0) return true;
  if (odd()) return pow(e, (q() - 1) / 2) == Elem{1};
  for (std::uint32_t y = 0; y < q(); ++y)
    if (sqr(Elem{y}) == e) return true;
  return false;
}

std::vector<Elem> Field::elements() const {
  std::vector<Elem> out(q());
  for (std::uint32_t i = 0; i < q(); ++i) out[i] = Elem{i};
  return out;
}

std::vector<std::uint32_t> Field::digits(Elem e) const { return decode(e.index, p(), n()); }

}  // namespace fqinc
