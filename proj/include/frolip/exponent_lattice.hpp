#pragma once

#include <gmp.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "frolip/errors.hpp"
#include "frolip/linalg.hpp"
#include "frolip/numeric.hpp"

namespace frolip {

// A point of Z^s: the exponent of a ratio over a pseudo-basis.
class ExponentVector {
 public:
  using value_type = std::int64_t;

  ExponentVector() = default;
  explicit ExponentVector(std::size_t dim) : coords_(dim, 0) {}
  ExponentVector(std::initializer_list<value_type> xs) : coords_(xs) {}
  explicit ExponentVector(std::vector<value_type> xs) : coords_(std::move(xs)) {}

  std::size_t size() const noexcept { return coords_.size(); }
  value_type operator[](std::size_t i) const { return coords_[i]; }
  value_type& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<value_type>& coords() const noexcept { return coords_; }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](value_type v) { return v == 0; });
  }

  ExponentVector& operator+=(const ExponentVector& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (__builtin_add_overflow(coords_[i], o.coords_[i], &coords_[i]))
        throw ResourceLimit("exponent overflow");
    return *this;
  }
  ExponentVector& operator-=(const ExponentVector& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (__builtin_sub_overflow(coords_[i], o.coords_[i], &coords_[i]))
        throw ResourceLimit("exponent overflow");
    return *this;
  }
  friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) { return a += b; }
  friend ExponentVector operator-(ExponentVector a, const ExponentVector& b) { return a -= b; }
  ExponentVector operator-() const {
    ExponentVector r(*this);
    for (auto& v : r.coords_) v = -v;
    return r;
  }
  ExponentVector scaled(value_type c) const {
    ExponentVector r(*this);
    for (auto& v : r.coords_)
      if (__builtin_mul_overflow(v, c, &v)) throw ResourceLimit("exponent overflow");
    return r;
  }

  BigInt squared_norm() const {
    BigInt s = 0;
    for (auto v : coords_) s += BigInt(v) * v;
    return s;
  }

  linalg::Vector to_rational() const {
    linalg::Vector r;
    r.reserve(coords_.size());
    for (auto v : coords_) r.emplace_back(v);
    return r;
  }

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  friend auto operator<=>(const ExponentVector& a, const ExponentVector& b) {
    return a.coords_ <=> b.coords_;
  }

 private:
  void check_same_size(const ExponentVector& o) const {
    if (o.size() != size()) throw DomainError("DimensionMismatch", "exponent vectors differ in dimension");
  }
  std::vector<value_type> coords_;
};

struct ExponentVectorHash {
  std::size_t operator()(const ExponentVector& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto c : v) h = (h ^ std::hash<std::int64_t>{}(c)) * 0x100000001b3ULL;
    return h;
  }
};

inline std::size_t common_dimension(const std::vector<ExponentVector>& vs) {
  if (vs.empty()) throw DomainError("EmptyInput", "no vectors given");
  const std::size_t s = vs.front().size();
  if (s == 0) throw DomainError("DimensionMismatch", "zero-dimensional vectors");
  for (const auto& v : vs)
    if (v.size() != s) throw DomainError("DimensionMismatch", "vectors differ in dimension");
  return s;
}

inline Rational dot(const ExponentVector& x, const std::vector<Rational>& a) {
  if (x.size() != a.size()) throw DomainError("DimensionMismatch", "dot product of mismatched vectors");
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) s += a[i] * x[i];
  return s;
}

inline linalg::Matrix to_rational_matrix(const std::vector<ExponentVector>& vs) {
  linalg::Matrix m;
  m.reserve(vs.size());
  for (const auto& v : vs) m.push_back(v.to_rational());
  return m;
}

// ---------------------------------------------------------------------------
// Ratio input

// One contraction ratio: an exact rational in (0,1), or a monomial with
// nonnegative exponents over the named generators of its RatioList.
struct RatioSpec {
  std::variant<Rational, std::vector<std::int64_t>> value;

  bool is_rational() const { return std::holds_alternative<Rational>(value); }
  const Rational& rational() const { return std::get<Rational>(value); }
  const std::vector<std::int64_t>& monomial() const { return std::get<std::vector<std::int64_t>>(value); }
  friend bool operator==(const RatioSpec&, const RatioSpec&) = default;
};

struct RatioList {
  std::vector<std::string> generators;  // empty for rational input
  std::vector<RatioSpec> ratios;

  bool symbolic() const { return !generators.empty(); }
  std::size_t size() const { return ratios.size(); }

  static RatioList from_rationals(const std::vector<Rational>& rs) {
    RatioList out;
    for (const auto& r : rs) out.ratios.push_back(RatioSpec{r});
    return out;
  }
  static RatioList from_monomials(std::vector<std::string> gens,
                                  const std::vector<std::vector<std::int64_t>>& monomials) {
    RatioList out;
    out.generators = std::move(gens);
    for (const auto& m : monomials) out.ratios.push_back(RatioSpec{m});
    return out;
  }

  void validate() const {
    if (ratios.empty()) throw DomainError("EmptyInput", "no ratios given");
    if (symbolic()) {
      for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i + 1; j < generators.size(); ++j)
          if (generators[i] == generators[j])
            throw DomainError("DuplicateGenerator", "generator \"" + generators[i] + "\" listed twice");
    }
    for (const auto& r : ratios) {
      if (symbolic()) {
        if (r.is_rational()) throw DomainError("MixedRatioKinds", "rational ratio in a monomial list");
        const auto& m = r.monomial();
        if (m.size() != generators.size())
          throw DomainError("DimensionMismatch", "monomial length differs from generator count");
        bool any = false;
        for (auto e : m) {
          if (e < 0) throw DomainError("RatioOutOfRange", "monomial exponents must be nonnegative");
          any = any || e > 0;
        }
        if (!any) throw DomainError("RatioOutOfRange", "monomial with all exponents zero equals 1");
      } else {
        if (!r.is_rational()) throw DomainError("MixedRatioKinds", "monomial ratio without generators");
        if (r.rational() <= 0 || r.rational() >= 1)
          throw DomainError("RatioOutOfRange", "ratio " + to_string(r.rational()) + " not in (0,1)");
      }
    }
  }

  friend bool operator==(const RatioList&, const RatioList&) = default;
};

// ---------------------------------------------------------------------------
// Pseudo-basis

enum class BasisKind { Prime, Symbolic };

// Basis elements are monomials over "roots": reciprocal primes 1/p for the
// numeric case, named formal generators for the symbolic case.
class PseudoBasis {
 public:
  PseudoBasis() = default;

  static PseudoBasis reciprocal_primes(std::vector<BigInt> primes) {
    PseudoBasis b;
    b.kind_ = BasisKind::Prime;
    for (const auto& p : primes) b.root_names_.push_back(p.str());
    b.primes_ = std::move(primes);
    b.elements_ = identity(b.primes_.size());
    return b;
  }

  static PseudoBasis symbols(std::vector<std::string> names) {
    PseudoBasis b;
    b.kind_ = BasisKind::Symbolic;
    b.root_names_ = std::move(names);
    b.elements_ = identity(b.root_names_.size());
    return b;
  }

  PseudoBasis with_elements(std::vector<ExponentVector> elements) const {
    PseudoBasis b(*this);
    b.elements_ = std::move(elements);
    return b;
  }

  BasisKind kind() const noexcept { return kind_; }
  bool numeric() const noexcept { return kind_ == BasisKind::Prime; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t root_count() const noexcept { return root_names_.size(); }
  const std::vector<std::string>& root_names() const noexcept { return root_names_; }
  const std::vector<BigInt>& primes() const noexcept { return primes_; }
  const std::vector<ExponentVector>& elements() const noexcept { return elements_; }

  // Root coordinates of lambda^x.
  ExponentVector to_roots(const ExponentVector& x) const {
    if (x.size() != size()) throw DomainError("DimensionMismatch", "exponent vector does not match basis");
    ExponentVector out(root_count());
    for (std::size_t i = 0; i < size(); ++i)
      if (x[i] != 0) out += elements_[i].scaled(x[i]);
    return out;
  }

  // Exact value of lambda^x (numeric bases only).
  Rational evaluate(const ExponentVector& x) const {
    if (!numeric()) throw DomainError("SymbolicValue", "symbolic basis has no numeric value");
    const ExponentVector r = to_roots(x);
    BigInt num = 1;
    BigInt den = 1;
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r[k] == 0) continue;
      BigInt pw = boost::multiprecision::pow(primes_[k], static_cast<unsigned>(r[k] > 0 ? r[k] : -r[k]));
      // root is 1/p, so positive exponents land in the denominator
      if (r[k] > 0)
        den *= pw;
      else
        num *= pw;
    }
    return Rational(num, den);
  }

  Rational value(std::size_t i) const {
    ExponentVector e(size());
    e[i] = 1;
    return evaluate(e);
  }

  std::vector<Rational> values() const {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(value(i));
    return out;
  }

  // Human-readable form of lambda^x: "p/q" for numeric, "a^2*b" for symbolic.
  std::string describe(const ExponentVector& x) const {
    if (numeric()) return to_string(evaluate(x));
    const ExponentVector r = to_roots(x);
    std::string out;
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r[k] == 0) continue;
      if (!out.empty()) out += "*";
      out += root_names_[k];
      if (r[k] != 1) out += "^" + std::to_string(r[k]);
    }
    return out.empty() ? "1" : out;
  }

  std::string describe_element(std::size_t i) const {
    ExponentVector e(size());
    e[i] = 1;
    return describe(e);
  }

  friend bool operator==(const PseudoBasis&, const PseudoBasis&) = default;

 private:
  static std::vector<ExponentVector> identity(std::size_t n) {
    std::vector<ExponentVector> out(n, ExponentVector(n));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
    return out;
  }

  BasisKind kind_ = BasisKind::Prime;
  std::vector<std::string> root_names_;
  std::vector<BigInt> primes_;
  std::vector<ExponentVector> elements_;
};

struct LatticeSystem {
  PseudoBasis basis;
  std::vector<ExponentVector> vectors;
};

// ---------------------------------------------------------------------------
// Factorization and integer linear algebra

namespace detail {

inline void add_factor(std::map<BigInt, std::int64_t>& f, const BigInt& p, std::int64_t e) {
  auto& slot = f[p];
  slot += e;
}

// Trial division with a probable-prime test on the cofactor; enough for
// hand-written ratio data.
inline std::map<BigInt, std::int64_t> factorize(BigInt n) {
  std::map<BigInt, std::int64_t> f;
  if (n < 1) throw DomainError("RatioOutOfRange", "cannot factor a non-positive integer");
  constexpr unsigned long kTrialLimit = 1000000;
  for (unsigned long d = 2; d <= kTrialLimit; d += (d == 2 ? 1 : 2)) {
    if (BigInt(d) * d > n) break;
    while (n % d == 0) {
      add_factor(f, BigInt(d), 1);
      n /= d;
    }
  }
  if (n > 1) {
    if (n > BigInt(kTrialLimit) * kTrialLimit && mpz_probab_prime_p(n.backend().data(), 30) == 0)
      throw ResourceLimit("cannot factor " + n.str() + " by trial division");
    add_factor(f, n, 1);
  }
  return f;
}

}  // namespace detail

// Prime-reciprocal basis (primes ascending) with exponent vectors such that
// ratio = prod (1/p_k)^{x_k} exactly.
inline LatticeSystem factor_rationals(const std::vector<Rational>& ratios) {
  if (ratios.empty()) throw DomainError("EmptyInput", "no ratios given");
  std::vector<std::map<BigInt, std::int64_t>> valuations;
  std::map<BigInt, bool> all_primes;
  for (const auto& r : ratios) {
    if (r <= 0 || r >= 1) throw DomainError("RatioOutOfRange", "ratio " + to_string(r) + " not in (0,1)");
    std::map<BigInt, std::int64_t> v;
    for (const auto& [p, e] : detail::factorize(denominator_of(r))) detail::add_factor(v, p, e);
    for (const auto& [p, e] : detail::factorize(numerator_of(r))) detail::add_factor(v, p, -e);
    for (const auto& [p, e] : v) all_primes[p] = true;
    valuations.push_back(std::move(v));
  }
  std::vector<BigInt> primes;
  for (const auto& [p, unused] : all_primes) primes.push_back(p);
  LatticeSystem out{PseudoBasis::reciprocal_primes(primes), {}};
  for (const auto& v : valuations) {
    ExponentVector x(primes.size());
    for (std::size_t k = 0; k < primes.size(); ++k) {
      auto it = v.find(primes[k]);
      if (it != v.end()) x[k] = it->second;
    }
    out.vectors.push_back(std::move(x));
  }
  return out;
}

inline LatticeSystem ingest_monomials(const RatioList& list) {
  list.validate();
  if (!list.symbolic()) throw DomainError("MixedRatioKinds", "expected monomial ratios");
  LatticeSystem out{PseudoBasis::symbols(list.generators), {}};
  for (const auto& r : list.ratios) out.vectors.emplace_back(r.monomial());
  return out;
}

inline std::size_t integer_rank(const std::vector<ExponentVector>& vectors) {
  common_dimension(vectors);
  return linalg::rank(to_rational_matrix(vectors));
}

using IntegerMatrix = std::vector<std::vector<BigInt>>;

// Row-style Hermite normal form: nonzero rows only, positive pivots, entries
// above each pivot reduced into [0, pivot).
inline IntegerMatrix hermite_normal_form(const std::vector<ExponentVector>& vectors) {
  const std::size_t s = common_dimension(vectors);
  IntegerMatrix a;
  for (const auto& v : vectors) {
    std::vector<BigInt> row;
    for (auto c : v) row.emplace_back(c);
    a.push_back(std::move(row));
  }
  auto axpy = [&](std::size_t dst, const BigInt& q, std::size_t src) {
    for (std::size_t j = 0; j < s; ++j) a[dst][j] -= q * a[src][j];
  };
  std::size_t r = 0;
  for (std::size_t col = 0; col < s && r < a.size(); ++col) {
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      while (a[i][col] != 0) {
        const BigInt q = a[r][col] / a[i][col];
        axpy(r, q, i);
        std::swap(a[r], a[i]);
      }
    }
    if (a[r][col] == 0) continue;
    if (a[r][col] < 0)
      for (auto& x : a[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q = a[i][col] / a[r][col];
      if (a[i][col] < 0 && q * a[r][col] != a[i][col]) q -= 1;  // floor division
      if (q != 0) axpy(i, q, r);
    }
    ++r;
  }
  a.resize(r);
  return a;
}

// Integer coefficients c with x = sum c_i H_i, for H in Hermite normal form.
inline ExponentVector hnf_coordinates(const IntegerMatrix& h, const ExponentVector& x) {
  std::vector<BigInt> residual;
  for (auto c : x) residual.emplace_back(c);
  ExponentVector coeff(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    std::size_t piv = 0;
    while (h[i][piv] == 0) ++piv;
    if (residual[piv] % h[i][piv] != 0)
      throw DomainError("NotInLattice", "vector is not an integer combination of the lattice rows");
    const BigInt c = residual[piv] / h[i][piv];
    coeff[i] = to_int64(c);
    for (std::size_t j = 0; j < residual.size(); ++j) residual[j] -= c * h[i][j];
  }
  for (const auto& v : residual)
    if (v != 0) throw DomainError("NotInLattice", "vector is not in the row lattice");
  return coeff;
}

// Shrinks an oversized basis to one of exactly rank size. New basis elements
// are the HNF rows of the exponent matrix; numeric elements outside (0,1) are
// inverted and their exponent column negated.
inline LatticeSystem reduce_to_pseudo_basis(const LatticeSystem& system) {
  const std::size_t s = common_dimension(system.vectors);
  if (s != system.basis.size()) throw DomainError("DimensionMismatch", "exponent vectors do not match basis");
  const IntegerMatrix h = hermite_normal_form(system.vectors);
  if (h.empty()) throw DomainError("ZeroRank", "all exponent vectors are zero");
  if (h.size() == s) return system;

  std::vector<ExponentVector> elements;
  for (const auto& row : h) {
    ExponentVector combo(s);
    for (std::size_t j = 0; j < s; ++j) combo[j] = to_int64(row[j]);
    elements.push_back(system.basis.to_roots(combo));
  }
  std::vector<ExponentVector> coords;
  for (const auto& v : system.vectors) coords.push_back(hnf_coordinates(h, v));

  PseudoBasis reduced = system.basis.with_elements(elements);
  if (reduced.numeric()) {
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (reduced.value(i) < 1) continue;
      elements[i] = -elements[i];
      for (auto& c : coords) c[i] = -c[i];
    }
    reduced = system.basis.with_elements(elements);
  }
  return LatticeSystem{std::move(reduced), std::move(coords)};
}

}  // namespace frolip
