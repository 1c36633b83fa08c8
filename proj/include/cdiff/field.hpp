#ifndef CDIFF_FIELD_HPP
#define CDIFF_FIELD_HPP

// Prime-power finite fields F_{p^n} in polynomial basis.
//
// Elements are encoded as integers in [0, q): the coefficient vector
// (a_0, ..., a_{n-1}) of a_0 + a_1 x + ... + a_{n-1} x^{n-1} is stored as
// sum a_i p^i. Index 0 is zero, index 1 is one, and for n >= 2 index p is x.
// Fields up to the table threshold carry log/antilog/Zech tables; all fields
// keep the polynomial-reduction path, which doubles as the reference
// implementation for the tables.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cdiff/numeric.hpp"

namespace cdiff {

using Element = std::uint32_t;

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Coefficient list in ascending degree, e.g. {2, 1, 1} is x^2 + x + 2.
using Coefficients = std::vector<std::uint32_t>;

inline constexpr std::uint64_t kDefaultSizeLimit = std::uint64_t{1} << 22;

struct FieldOptions {
  std::uint64_t size_limit = kDefaultSizeLimit;
  std::uint64_t table_threshold = kDefaultSizeLimit;
};

namespace detail {

inline void trim(Coefficients& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inverse_mod_prime(std::uint32_t v, std::uint32_t p) {
  std::uint64_t r = 1, b = v % p;
  for (std::uint32_t e = p - 2; e != 0; e >>= 1) {
    if (e & 1u) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

/// a mod f over F_p; f need not be monic but must be nonzero.
inline Coefficients poly_mod(Coefficients a, Coefficients f, std::uint32_t p) {
  trim(a);
  trim(f);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = inverse_mod_prime(f.back(), p);
  while (a.size() >= f.size()) {
    const std::uint64_t factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      const std::uint64_t sub = factor * f[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

inline Coefficients poly_gcd(Coefficients a, Coefficients b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coefficients r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Arithmetic in F_p[x] / (f) on the base-p index encoding, f monic of degree n.
/// No irreducibility is assumed; this is the reduction path and the tool used
/// to test candidate moduli.
class PolyArith {
 public:
  PolyArith(std::uint32_t p, std::uint32_t n, Coefficients modulus)
      : p_(p), n_(n), modulus_(std::move(modulus)) {
    powers_.resize(n_ + 1);
    powers_[0] = 1;
    for (std::uint32_t i = 1; i <= n_; ++i) powers_[i] = powers_[i - 1] * p_;
    q_ = powers_[n_];
    if (p_ == 2) {
      for (std::uint32_t i = 0; i <= n_; ++i)
        if (modulus_[i] & 1u) modulus_bits_ |= std::uint64_t{1} << i;
    }
  }

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t n() const noexcept { return n_; }
  std::uint64_t q() const noexcept { return q_; }
  const Coefficients& modulus() const noexcept { return modulus_; }

  Coefficients digits(Element a) const {
    Coefficients d(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  Element from_digits(const Coefficients& d) const {
    std::uint64_t v = 0;
    for (std::size_t i = std::min<std::size_t>(d.size(), n_); i-- > 0;) v = v * p_ + d[i];
    return static_cast<Element>(v);
  }

  Element add(Element a, Element b) const {
    if (p_ == 2) return a ^ b;
    std::uint64_t out = 0;
    for (std::uint32_t i = 0; i < n_; ++i) {
      const std::uint32_t s = (a % p_ + b % p_) % p_;
      out += s * powers_[i];
      a /= p_;
      b /= p_;
    }
    return static_cast<Element>(out);
  }

  Element neg(Element a) const {
    if (p_ == 2) return a;
    std::uint64_t out = 0;
    for (std::uint32_t i = 0; i < n_; ++i) {
      const std::uint32_t d = a % p_;
      out += ((p_ - d) % p_) * powers_[i];
      a /= p_;
    }
    return static_cast<Element>(out);
  }

  Element mul(Element a, Element b) const {
    if (p_ == 2) return mul_binary(a, b);
    const Coefficients da = digits(a), db = digits(b);
    std::vector<std::uint64_t> prod(2 * n_ - 1, 0);
    for (std::uint32_t i = 0; i < n_; ++i) {
      if (da[i] == 0) continue;
      for (std::uint32_t j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_;
    }
    for (std::size_t i = prod.size(); i-- > n_;) {
      const std::uint64_t top = prod[i];
      if (top == 0) continue;
      const std::size_t shift = i - n_;
      for (std::uint32_t j = 0; j <= n_; ++j)
        prod[shift + j] = (prod[shift + j] + (p_ - top) * modulus_[j]) % p_;
    }
    std::uint64_t v = 0;
    for (std::uint32_t i = n_; i-- > 0;) v = v * p_ + prod[i];
    return static_cast<Element>(v);
  }

  Element pow(Element a, std::uint64_t e) const {
    Element r = 1;
    for (; e != 0; e >>= 1) {
      if (e & 1u) r = mul(r, a);
      a = mul(a, a);
    }
    return r;
  }

  /// Residue class of x modulo f.
  Element x_residue() const {
    if (n_ >= 2) return p_;
    return (p_ - modulus_[0]) % p_;
  }

 private:
  Element mul_binary(Element a, Element b) const {
    std::uint64_t prod = 0;
    for (std::uint64_t bb = b, shift = 0; bb != 0; bb >>= 1, ++shift)
      if (bb & 1u) prod ^= std::uint64_t{a} << shift;
    for (std::uint32_t i = 2 * n_; i-- > n_;)
      if (prod >> i & 1u) prod ^= modulus_bits_ << (i - n_);
    return static_cast<Element>(prod);
  }

  std::uint32_t p_;
  std::uint32_t n_;
  std::uint64_t q_ = 0;
  Coefficients modulus_;
  std::vector<std::uint64_t> powers_;
  std::uint64_t modulus_bits_ = 0;
};

/// True iff the multiplicative order of g is exactly q - 1.
inline bool has_full_order(const PolyArith& ring, Element g) {
  const std::uint64_t order = ring.q() - 1;
  if (g == 0) return false;
  if (ring.pow(g, order) != 1) return false;
  for (std::uint64_t r : prime_divisors(order))
    if (ring.pow(g, order / r) == 1) return false;
  return true;
}

/// Rabin's test: f monic of degree n is irreducible iff x^{p^n} = x mod f and
/// gcd(x^{p^{n/r}} - x, f) = 1 for each prime r | n.
inline bool is_irreducible(const PolyArith& ring) {
  const std::uint32_t p = ring.p(), n = ring.n();
  if (n == 1) return true;
  const Element x = ring.x_residue();
  auto frobenius_power = [&](std::uint32_t times) {
    Element v = x;
    for (std::uint32_t i = 0; i < times; ++i) v = ring.pow(v, p);
    return v;
  };
  if (frobenius_power(n) != x) return false;
  for (std::uint64_t r : prime_divisors(n)) {
    Coefficients h = ring.digits(ring.add(frobenius_power(n / static_cast<std::uint32_t>(r)), ring.neg(x)));
    Coefficients g = poly_gcd(ring.modulus(), h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

inline void check_field_size(std::uint32_t p, std::uint32_t n, std::uint64_t size_limit) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (n == 0) throw FieldError("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > size_limit)
      throw FieldError("field size " + std::to_string(p) + "^" + std::to_string(n) +
                       " exceeds the size limit " + std::to_string(size_limit));
  }
}

}  // namespace detail

/// Lexicographically smallest monic primitive polynomial of degree n over F_p,
/// ordering candidates by their low coefficients read as the base-p integer
/// a_0 + a_1 p + ... + a_{n-1} p^{n-1}. For n = 1 the result is x - g with g
/// the smallest primitive root mod p.
inline Coefficients find_primitive_modulus(std::uint32_t p, std::uint32_t n,
                                           std::uint64_t size_limit = kDefaultSizeLimit) {
  detail::check_field_size(p, n, size_limit);
  const std::uint64_t q = checked_pow(p, n);
  if (n == 1) {
    for (std::uint32_t g = 1; g < p; ++g) {
      const Coefficients f = {(p - g) % p, 1};
      detail::PolyArith ring(p, 1, f);
      if (detail::has_full_order(ring, ring.x_residue())) return f;
    }
  }
  for (std::uint64_t v = 1; v < q; ++v) {
    if (v % p == 0) continue;  // f(0) = 0
    Coefficients f(n + 1);
    std::uint64_t t = v;
    for (std::uint32_t i = 0; i < n; ++i) {
      f[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    f[n] = 1;
    detail::PolyArith ring(p, n, f);
    if (detail::has_full_order(ring, ring.x_residue())) return f;
  }
  throw FieldError("no primitive polynomial found");  // unreachable for prime p
}

/// An immutable F_{p^n}. Copies share the underlying tables.
class Field {
 public:
  static Field build(std::uint32_t p, std::uint32_t n, std::optional<Coefficients> modulus = std::nullopt,
                     FieldOptions options = {}) {
    detail::check_field_size(p, n, options.size_limit);
    Coefficients f;
    if (modulus) {
      f = *modulus;
      if (f.size() != n + 1)
        throw FieldError("modulus must have degree " + std::to_string(n) + " (got " +
                         std::to_string(f.empty() ? 0 : f.size() - 1) + ")");
      for (auto c : f)
        if (c >= p) throw FieldError("modulus coefficient " + std::to_string(c) + " is not reduced mod p");
      if (f.back() != 1) throw FieldError("modulus must be monic");
    } else {
      f = find_primitive_modulus(p, n, options.size_limit);
    }
    auto data = std::make_shared<Data>(detail::PolyArith(p, n, f));
    const auto& ring = data->ring;
    if (modulus && !detail::is_irreducible(ring)) throw FieldError("modulus is reducible over F_p");

    const Element x = ring.x_residue();
    if (detail::has_full_order(ring, x)) {
      data->generator = x;
    } else {
      for (Element g = 2; g < ring.q(); ++g)
        if (detail::has_full_order(ring, g)) {
          data->generator = g;
          break;
        }
    }
    if (ring.q() <= options.table_threshold) data->build_tables();
    return Field(std::move(data));
  }

  std::uint32_t characteristic() const noexcept { return d_->ring.p(); }
  std::uint32_t degree() const noexcept { return d_->ring.n(); }
  std::uint32_t order() const noexcept { return static_cast<std::uint32_t>(d_->ring.q()); }
  const Coefficients& modulus() const noexcept { return d_->ring.modulus(); }
  Element generator() const noexcept { return d_->generator; }
  bool has_tables() const noexcept { return !d_->log.empty(); }
  bool contains(Element a) const noexcept { return a < order(); }

  /// The prime-subfield element v mod p (negative v allowed).
  Element scalar(std::int64_t v) const noexcept {
    const std::int64_t p = characteristic();
    return static_cast<Element>(((v % p) + p) % p);
  }

  Element add(Element a, Element b) const {
    if (characteristic() == 2) return a ^ b;
    if (!has_tables()) return d_->ring.add(a, b);
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t m = order() - 1;
    const std::uint32_t la = d_->log[a], lb = d_->log[b];
    const std::uint32_t k = lb >= la ? lb - la : lb + m - la;
    const std::uint32_t z = d_->zech[k];
    if (z == kNoLog) return 0;
    return d_->exp[la + z];
  }

  Element neg(Element a) const {
    if (characteristic() == 2 || a == 0) return a;
    if (!has_tables()) return d_->ring.neg(a);
    return d_->exp[d_->log[a] + (order() - 1) / 2];
  }

  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element mul(Element a, Element b) const {
    if (!has_tables()) return d_->ring.mul(a, b);
    if (a == 0 || b == 0) return 0;
    return d_->exp[d_->log[a] + d_->log[b]];
  }

  Element inv(Element a) const {
    if (a == 0) throw FieldError("inverse of zero");
    if (!has_tables()) return d_->ring.pow(a, order() - 2);
    const std::uint32_t la = d_->log[a];
    return la == 0 ? 1 : d_->exp[order() - 1 - la];
  }

  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  /// a^e with 0^0 = 1 and 0^e = 0 for e > 0; e is reduced mod q-1 for a != 0.
  Element pow(Element a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    const std::uint64_t m = order() - 1;
    if (!has_tables()) return d_->ring.pow(a, e % m);
    return d_->exp[static_cast<std::uint32_t>(std::uint64_t{d_->log[a]} * (e % m) % m)];
  }

  Element frobenius(Element a) const { return pow(a, characteristic()); }

  /// Discrete log base generator(); a != 0.
  std::uint32_t log(Element a) const {
    if (a == 0) throw FieldError("logarithm of zero");
    if (has_tables()) return d_->log[a];
    Element v = 1;
    for (std::uint32_t i = 0;; ++i, v = d_->ring.mul(v, generator()))
      if (v == a) return i;
  }

  /// sum_{i<n} a^{p^i}; the result lies in F_p.
  Element trace(Element a) const { return relative_trace(a, 1); }

  /// sum_{i < n/d} a^{p^{d i}}, landing in F_{p^d}; d must divide n.
  Element relative_trace(Element a, std::uint32_t d) const {
    if (d == 0 || degree() % d != 0)
      throw FieldError("relative trace degree " + std::to_string(d) + " does not divide " + std::to_string(degree()));
    const std::uint64_t step = checked_pow(characteristic(), d);
    Element sum = 0, term = a;
    for (std::uint32_t i = 0; i < degree() / d; ++i) {
      sum = add(sum, term);
      term = pow(term, step);
    }
    return sum;
  }

  /// Quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise.
  int quadratic_character(Element a) const {
    if (characteristic() == 2) throw FieldError("quadratic character needs odd characteristic");
    if (a == 0) return 0;
    if (has_tables()) return d_->log[a] % 2 == 0 ? 1 : -1;
    return pow(a, (order() - 1) / 2) == 1 ? 1 : -1;
  }

  // Reference arithmetic by polynomial reduction, independent of the tables.
  Element add_reference(Element a, Element b) const { return d_->ring.add(a, b); }
  Element mul_reference(Element a, Element b) const { return d_->ring.mul(a, b); }

  Coefficients digits(Element a) const { return d_->ring.digits(a); }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.characteristic() == b.characteristic() && a.degree() == b.degree() && a.modulus() == b.modulus();
  }

 private:
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  struct Data {
    explicit Data(detail::PolyArith r) : ring(std::move(r)) {}

    void build_tables() {
      const std::uint32_t q = static_cast<std::uint32_t>(ring.q());
      const std::uint32_t m = q - 1;
      exp.resize(2 * std::size_t{m});
      log.assign(q, kNoLog);
      Element v = 1;
      for (std::uint32_t i = 0; i < m; ++i) {
        exp[i] = v;
        exp[i + m] = v;
        log[v] = i;
        v = ring.mul(v, generator);
      }
      log[0] = kNoLog;
      if (ring.p() != 2) {
        zech.resize(m);
        for (std::uint32_t k = 0; k < m; ++k) {
          const Element s = ring.add(1, exp[k]);
          zech[k] = s == 0 ? kNoLog : log[s];
        }
      }
    }

    detail::PolyArith ring;
    Element generator = 1;
    std::vector<std::uint32_t> log;
    std::vector<Element> exp;
    std::vector<std::uint32_t> zech;
  };

  explicit Field(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  std::shared_ptr<const Data> d_;
};

/// Parses "c0,c1,...,cn" (ascending degree).
inline Coefficients parse_coefficients(std::string_view text) {
  Coefficients out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789 ") != std::string::npos)
      throw FieldError("bad coefficient list '" + std::string(text) + "'");
    out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  if (out.empty()) throw FieldError("empty coefficient list");
  return out;
}

inline std::string format_coefficients(const Coefficients& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c[i]);
  }
  return out;
}

/// Human-readable form, highest degree first: "x^2 + x + 2".
inline std::string format_polynomial(const Coefficients& c) {
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0 || c[i] != 1) out += std::to_string(c[i]);
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace cdiff

#endif  // CDIFF_FIELD_HPP
