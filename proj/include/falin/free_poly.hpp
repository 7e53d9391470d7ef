#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "falin/errors.hpp"
#include "falin/laurent.hpp"
#include "falin/rational.hpp"
#include "falin/word.hpp"

namespace falin {

// Coefficient rings. A FreePoly carries its ring so that zero and one can be
// built without a sample coefficient.

struct ScalarRing {
  friend bool operator==(const ScalarRing&, const ScalarRing&) = default;
};

struct LaurentRing {
  std::size_t nvars = 0;
  friend bool operator==(const LaurentRing&, const LaurentRing&) = default;
};

template <class C>
struct coeff_traits;

template <>
struct coeff_traits<Rational> {
  using ring_type = ScalarRing;
  static Rational from_rational(ScalarRing, const Rational& r) { return r; }
  static bool is_zero(const Rational& c) { return c == 0; }
  static bool belongs(const Rational&, ScalarRing) { return true; }
  static std::string describe(ScalarRing) { return "scalar"; }
};

template <>
struct coeff_traits<LaurentPoly> {
  using ring_type = LaurentRing;
  static LaurentPoly from_rational(LaurentRing r, const Rational& c) {
    return LaurentPoly::constant(r.nvars, c);
  }
  static bool is_zero(const LaurentPoly& c) { return c.is_zero(); }
  static bool belongs(const LaurentPoly& c, LaurentRing r) { return c.nvars() == r.nvars; }
  static std::string describe(LaurentRing r) { return "laurent(" + std::to_string(r.nvars) + ")"; }
};

template <class C>
concept Coefficient = requires(const C& a, const C& b) {
  typename coeff_traits<C>::ring_type;
  { a + b } -> std::convertible_to<C>;
  { a * b } -> std::convertible_to<C>;
  { a == b } -> std::convertible_to<bool>;
};

template <Coefficient C>
using ring_of = typename coeff_traits<C>::ring_type;

/// Scalar multiple of a coefficient.
inline Rational scale(const Rational& c, const Rational& s) { return c * s; }
inline LaurentPoly scale(const LaurentPoly& c, const Rational& s) { return l_scale(c, s); }

/// Product of coefficients of possibly different types; Laurent wins.
inline Rational coeff_mul(const Rational& a, const Rational& b) { return a * b; }
inline LaurentPoly coeff_mul(const LaurentPoly& a, const Rational& b) { return l_scale(a, b); }
inline LaurentPoly coeff_mul(const Rational& a, const LaurentPoly& b) { return l_scale(b, a); }
inline LaurentPoly coeff_mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

template <class A, class B>
using product_coeff = decltype(coeff_mul(std::declval<const A&>(), std::declval<const B&>()));

/// Element of the free associative algebra K<z_1..z_n> (or its extension by
/// Laurent coefficients). Letters do not commute; coefficients are central.
template <Coefficient C>
class FreePoly {
public:
  using coeff_type = C;
  using ring_type = ring_of<C>;
  using TermMap = std::map<Word, C>;

  FreePoly() = default;
  explicit FreePoly(std::size_t rank, ring_type ring = {}) : rank_(rank), ring_(ring) {
    if (rank > max_rank)
      throw DomainError("rank " + std::to_string(rank) + " exceeds " + std::to_string(max_rank));
  }

  static FreePoly constant(std::size_t rank, ring_type ring, const C& c) {
    FreePoly p(rank, ring);
    p.add_term(Word{}, c);
    return p;
  }

  static FreePoly one(std::size_t rank, ring_type ring = {}) {
    return constant(rank, ring, coeff_traits<C>::from_rational(ring, 1));
  }

  /// z_k, k one-based.
  static FreePoly generator(std::size_t rank, ring_type ring, int k) {
    return monomial(rank, ring, Word::letter(k), coeff_traits<C>::from_rational(ring, 1));
  }

  static FreePoly monomial(std::size_t rank, ring_type ring, const Word& w, const C& c) {
    FreePoly p(rank, ring);
    p.add_term(w, c);
    return p;
  }

  std::size_t rank() const noexcept { return rank_; }
  const ring_type& ring() const noexcept { return ring_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  C coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? zero() : it->second;
  }

  C zero() const { return coeff_traits<C>::from_rational(ring_, 0); }

  void add_term(const Word& w, const C& c) {
    if (!coeff_traits<C>::belongs(c, ring_))
      throw DimensionMismatch("coefficient does not belong to " +
                              coeff_traits<C>::describe(ring_));
    if (static_cast<std::size_t>(w.max_letter()) > rank_)
      throw DomainError("word uses generator beyond rank " + std::to_string(rank_));
    accumulate(w, c);
  }

  /// Highest word length, -1 for the zero polynomial.
  int degree() const noexcept {
    int d = -1;
    for (const auto& [w, c] : terms_)
      d = std::max(d, static_cast<int>(w.size()));
    return d;
  }

  /// The homogeneous component of the given length.
  FreePoly homogeneous_part(std::size_t length) const {
    FreePoly p(rank_, ring_);
    for (const auto& [w, c] : terms_)
      if (w.size() == length)
        p.terms_.emplace(w, c);
    return p;
  }

  FreePoly truncated(std::size_t max_length) const {
    FreePoly p(rank_, ring_);
    for (const auto& [w, c] : terms_)
      if (w.size() <= max_length)
        p.terms_.emplace(w, c);
    return p;
  }

  /// this += factor * other.
  void add_scaled(const FreePoly& other, const C& factor) {
    require_compatible(other);
    for (const auto& [w, c] : other.terms_)
      accumulate(w, c * factor);
  }

  /// this += other * factor for coefficient types whose product is C. Words
  /// are assumed valid for this rank.
  template <class D, class F>
  void add_product(const FreePoly<D>& other, const F& factor) {
    for (const auto& [w, c] : other.terms())
      accumulate(w, coeff_mul(c, factor));
  }

  void require_compatible(const FreePoly& other) const {
    if (rank_ != other.rank_ || !(ring_ == other.ring_))
      throw DimensionMismatch("free polynomials over different rings: rank " +
                              std::to_string(rank_) + "/" + coeff_traits<C>::describe(ring_) +
                              " vs rank " + std::to_string(other.rank_) + "/" +
                              coeff_traits<C>::describe(other.ring_));
  }

  friend bool operator==(const FreePoly&, const FreePoly&) = default;

  friend FreePoly operator+(const FreePoly& a, const FreePoly& b) {
    a.require_compatible(b);
    FreePoly r = a;
    for (const auto& [w, c] : b.terms_)
      r.accumulate(w, c);
    return r;
  }

  friend FreePoly operator-(const FreePoly& a) {
    FreePoly r(a.rank_, a.ring_);
    for (const auto& [w, c] : a.terms_)
      r.terms_.emplace(w, scale(c, -1));
    return r;
  }

  friend FreePoly operator-(const FreePoly& a, const FreePoly& b) { return a + (-b); }

  friend FreePoly operator*(const FreePoly& a, const FreePoly& b) {
    return multiply(a, b, std::nullopt);
  }

  friend FreePoly operator*(const Rational& s, const FreePoly& a) {
    FreePoly r(a.rank_, a.ring_);
    if (s == 0)
      return r;
    for (const auto& [w, c] : a.terms_)
      r.terms_.emplace(w, scale(c, s));
    return r;
  }

  /// Product keeping only words of length <= max_length when a bound is given.
  static FreePoly multiply(const FreePoly& a, const FreePoly& b, std::optional<std::size_t> max_length) {
    a.require_compatible(b);
    FreePoly r(a.rank_, a.ring_);
    for (const auto& [wa, ca] : a.terms_) {
      if (max_length && wa.size() > *max_length)
        continue;
      for (const auto& [wb, cb] : b.terms_) {
        if (max_length && wa.size() + wb.size() > *max_length)
          continue;
        r.accumulate(wa + wb, ca * cb);
      }
    }
    return r;
  }

private:
  void accumulate(const Word& w, const C& c) {
    if (coeff_traits<C>::is_zero(c))
      return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (coeff_traits<C>::is_zero(it->second))
        terms_.erase(it);
    }
  }

  std::size_t rank_ = 0;
  ring_type ring_{};
  TermMap terms_;
};

using ScalarPoly = FreePoly<Rational>;
using ActionPoly = FreePoly<LaurentPoly>;

template <Coefficient C>
FreePoly<C> f_mul(const FreePoly<C>& p, const FreePoly<C>& q) {
  return p * q;
}

template <Coefficient C>
FreePoly<C> f_add(const FreePoly<C>& p, const FreePoly<C>& q) {
  return p + q;
}

template <Coefficient C>
int f_degree(const FreePoly<C>& p) {
  return p.degree();
}

/// Scalar coefficients viewed as constant Laurent polynomials.
inline ActionPoly promote(const ScalarPoly& p, LaurentRing ring) {
  ActionPoly r(p.rank(), ring);
  for (const auto& [w, c] : p.terms())
    r.add_term(w, LaurentPoly::constant(ring.nvars, c));
  return r;
}

inline ActionPoly promote(const ActionPoly& p, LaurentRing ring) {
  if (!(p.ring() == ring))
    throw DimensionMismatch("cannot move Laurent coefficients to another variable set");
  return p;
}

/// Algebra-homomorphism image of p under z_j -> images[j-1]. Words sharing a
/// prefix reuse the prefix product. With max_length set, every word longer
/// than the bound is dropped (valid because lengths add under products).
template <Coefficient CP, Coefficient CI>
FreePoly<product_coeff<CP, CI>> f_substitute(const FreePoly<CP>& p,
                                             std::span<const FreePoly<CI>> images,
                                             std::optional<std::size_t> max_length = std::nullopt) {
  using R = product_coeff<CP, CI>;
  if (images.size() != p.rank())
    throw DimensionMismatch("substitution needs one image per generator: " +
                            std::to_string(p.rank()) + " expected, " +
                            std::to_string(images.size()) + " given");
  if (images.empty())
    throw DimensionMismatch("substitution into rank 0");
  const std::size_t rank = images.front().rank();
  const auto image_ring = images.front().ring();
  for (const auto& img : images)
    images.front().require_compatible(img);

  ring_of<R> ring{};
  if constexpr (std::same_as<CI, LaurentPoly>) {
    ring = image_ring;
    if constexpr (std::same_as<CP, LaurentPoly>)
      if (!(p.ring() == image_ring))
        throw DimensionMismatch("substitution mixes Laurent rings");
  } else if constexpr (std::same_as<CP, LaurentPoly>) {
    ring = p.ring();
  }

  if (std::all_of(images.begin(), images.end(), [](const auto& g) { return g.degree() <= 1; })) {
    // Affine images never lengthen a word, so no truncation is needed along the
    // way. Letters are replaced one position at a time, right to left, so a
    // letter dropped for a constant only shifts positions already handled.
    std::map<Word, R> current;
    std::size_t longest = 0;
    for (const auto& [w, c] : p.terms()) {
      current.emplace(w, coeff_mul(c, coeff_traits<CI>::from_rational(image_ring, 1)));
      longest = std::max(longest, w.size());
    }
    for (std::size_t pos = longest; pos-- > 0;) {
      std::map<Word, R> next;
      auto add = [&next](Word w, R c) {
        if (coeff_traits<R>::is_zero(c))
          return;
        auto [it, inserted] = next.try_emplace(std::move(w), c);
        if (!inserted) {
          it->second += c;
          if (coeff_traits<R>::is_zero(it->second))
            next.erase(it);
        }
      };
      for (const auto& [w, c] : current) {
        if (w.size() <= pos) {
          add(w, c);
          continue;
        }
        for (const auto& [piece, a] : images[w[pos] - 1].terms())
          add(w.replaced(pos, piece), coeff_mul(c, a));
      }
      current = std::move(next);
    }
    FreePoly<R> result(rank, ring);
    for (auto& [w, c] : current)
      if (!max_length || w.size() <= *max_length)
        result.add_term(w, c);
    return result;
  }

  std::vector<const typename FreePoly<CP>::TermMap::value_type*> order;
  order.reserve(p.size());
  for (const auto& term : p.terms())
    order.push_back(&term);
  std::sort(order.begin(), order.end(),
            [](auto* a, auto* b) { return a->first.key() < b->first.key(); });

  FreePoly<R> result(rank, ring);
  std::vector<FreePoly<CI>> prefix;
  prefix.push_back(FreePoly<CI>::one(rank, image_ring));
  const Word* prev = nullptr;
  for (const auto* term : order) {
    const Word& w = term->first;
    std::size_t common = 0;
    if (prev) {
      while (common < w.size() && common < prev->size() && w[common] == (*prev)[common])
        ++common;
    }
    common = std::min(common, prefix.size() - 1);
    prefix.resize(common + 1);
    for (std::size_t k = common; k < w.size(); ++k)
      prefix.push_back(FreePoly<CI>::multiply(prefix.back(), images[w[k] - 1], max_length));
    result.add_product(prefix[w.size()], term->second);
    prev = &w;
  }
  return result;
}

template <Coefficient CP, Coefficient CI>
FreePoly<product_coeff<CP, CI>> f_substitute(const FreePoly<CP>& p,
                                             const std::vector<FreePoly<CI>>& images,
                                             std::optional<std::size_t> max_length = std::nullopt) {
  return f_substitute(p, std::span<const FreePoly<CI>>(images), max_length);
}

/// Image in the commutative quotient: each word becomes its letter-count
/// monomial x^e. For Laurent coefficients in k variables the result lives in
/// k + rank variables, torus variables first.
inline LaurentPoly abelianize(const ScalarPoly& p) {
  LaurentPoly r(p.rank());
  Exponent e(p.rank());
  for (const auto& [w, c] : p.terms()) {
    std::fill(e.begin(), e.end(), 0);
    for (std::size_t i = 0; i < w.size(); ++i)
      ++e[w[i] - 1];
    r.add_term(e, c);
  }
  return r;
}

inline LaurentPoly abelianize(const ActionPoly& p) {
  const std::size_t k = p.ring().nvars;
  LaurentPoly r(k + p.rank());
  Exponent e(k + p.rank());
  for (const auto& [w, c] : p.terms()) {
    Exponent counts(p.rank(), 0);
    for (std::size_t i = 0; i < w.size(); ++i)
      ++counts[w[i] - 1];
    for (const auto& [te, tc] : c.terms()) {
      std::copy(te.begin(), te.end(), e.begin());
      std::copy(counts.begin(), counts.end(), e.begin() + static_cast<std::ptrdiff_t>(k));
      r.add_term(e, tc);
    }
  }
  return r;
}

} // namespace falin
