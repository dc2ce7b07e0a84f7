#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "kpcover/cover.hpp"
#include "kpcover/errors.hpp"
#include "kpcover/numeric.hpp"

namespace kpc {

/// A cuspidal representation label: an opaque name, the rank r0 it lives on,
/// and the restriction of its central character to mu_n, encoded by the
/// exponent k with omega(zeta^j) = zeta_n^{kj}. Representations are labels
/// throughout; no module is ever realized.
struct CuspidalLabel {
  std::string name;
  std::int64_t r0 = 1;
  std::int64_t n = 1;
  std::int64_t mu_exponent = 0;  // k, reduced to [0, n)

  static CuspidalLabel make(std::string name, std::int64_t r0, std::int64_t n,
                            std::int64_t k) {
    require(r0 >= 1, "cuspidal rank must be positive");
    require(n >= 1, "ambient mu_n order must be positive");
    require(name.find('/') == std::string::npos &&
                name.find(':') == std::string::npos,
            "cuspidal name must not contain '/' or ':'");
    return CuspidalLabel{std::move(name), r0, n, mod_reduce(k, n)};
  }

  /// Order s of the central character on mu_n; s | n, and s = 1 iff k = 0.
  std::int64_t order() const { return n / std::gcd(n, mu_exponent); }

  friend bool operator==(const CuspidalLabel&, const CuspidalLabel&) = default;
  friend auto operator<=>(const CuspidalLabel&, const CuspidalLabel&) = default;
};

/// A segment [a,b] of twists of a cuspidal label; b - a is a nonnegative
/// integer, endpoints may be rational. Total rank is r0·(b-a+1).
struct Segment {
  CuspidalLabel rho;
  Rat a, b;

  static Segment make(CuspidalLabel rho, Rat a, Rat b) {
    Rat diff = b - a;
    diff.canonicalize();
    require(diff.get_den() == 1 && diff.get_num() >= 0,
            "segment endpoints must differ by a nonnegative integer");
    return Segment{std::move(rho), std::move(a), std::move(b)};
  }

  /// m = b - a + 1.
  std::int64_t length() const {
    Rat diff = b - a;
    return diff.get_num().get_si() + 1;
  }

  std::int64_t rank() const { return rho.r0 * length(); }

  friend bool operator==(const Segment&, const Segment&) = default;

  /// Total order: (name, a, b), refined by (r0, k) for robustness.
  friend bool operator<(const Segment& x, const Segment& y) {
    if (x.rho.name != y.rho.name) return x.rho.name < y.rho.name;
    if (int c = cmp(x.a, y.a); c != 0) return c < 0;
    if (int c = cmp(x.b, y.b); c != 0) return c < 0;
    return std::tie(x.rho.r0, x.rho.mu_exponent, x.rho.n) <
           std::tie(y.rho.r0, y.rho.mu_exponent, y.rho.n);
  }

  /// Textual form "name/r0/k:[a,b]".
  std::string to_string() const {
    return rho.name + "/" + std::to_string(rho.r0) + "/" +
           std::to_string(rho.mu_exponent) + ":[" + a.get_str() + "," +
           b.get_str() + "]";
  }
};

/// Classical Zelevinsky linkage: true iff the two segments sit on the same
/// cuspidal line, their union is a segment, and neither contains the other.
/// Differing labels are unlinked by convention.
inline bool linked(const Segment& d1, const Segment& d2) {
  if (d1.rho != d2.rho) return false;
  Rat offset = d1.a - d2.a;
  offset.canonicalize();
  if (offset.get_den() != 1) return false;  // different cuspidal line
  const auto union_is_segment =
      cmp(std::max(d1.a, d2.a), std::min(d1.b, d2.b) + 1) <= 0;
  const auto contains = [](const Segment& s, const Segment& t) {
    return cmp(s.a, t.a) <= 0 && cmp(t.b, s.b) <= 0;
  };
  return union_is_segment && !contains(d1, d2) && !contains(d2, d1);
}

/// A commutative formal product of segments, canonically sorted so that
/// equality is structural.
struct ProductTerm {
  std::vector<Segment> factors;  // sorted

  static ProductTerm make(std::vector<Segment> factors) {
    std::sort(factors.begin(), factors.end());
    return ProductTerm{std::move(factors)};
  }

  std::int64_t total_rank() const {
    std::int64_t acc = 0;
    for (const auto& f : factors) acc += f.rank();
    return acc;
  }

  friend bool operator==(const ProductTerm&, const ProductTerm&) = default;
  friend bool operator<(const ProductTerm& x, const ProductTerm& y) {
    return std::lexicographical_compare(x.factors.begin(), x.factors.end(),
                                        y.factors.begin(), y.factors.end());
  }
};

/// A finitely supported integer combination of product terms; zero
/// coefficients are never stored.
class GrothendieckElement {
 public:
  GrothendieckElement() = default;

  static GrothendieckElement single(ProductTerm term, Int coeff = Int(1)) {
    GrothendieckElement out;
    out.add(std::move(term), std::move(coeff));
    return out;
  }

  void add(ProductTerm term, Int coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(term);
    if (it == terms_.end()) {
      terms_.emplace(std::move(term), std::move(coeff));
    } else {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const std::map<ProductTerm, Int>& terms() const { return terms_; }

  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  friend bool operator==(const GrothendieckElement&,
                         const GrothendieckElement&) = default;

  GrothendieckElement& operator+=(const GrothendieckElement& other) {
    for (const auto& [term, coeff] : other.terms_) add(term, coeff);
    return *this;
  }

  /// Formal bilinear product: multiset union of factors, coefficients
  /// multiplied.
  friend GrothendieckElement operator*(const GrothendieckElement& x,
                                       const GrothendieckElement& y) {
    GrothendieckElement out;
    for (const auto& [tx, cx] : x.terms_)
      for (const auto& [ty, cy] : y.terms_) {
        std::vector<Segment> factors = tx.factors;
        factors.insert(factors.end(), ty.factors.begin(), ty.factors.end());
        out.add(ProductTerm::make(std::move(factors)), cx * cy);
      }
    return out;
  }

  /// Signed-sum rendering; terms in canonical order.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [term, coeff] : terms_) {
      if (!out.empty()) out += ' ';
      out += (coeff >= 0) ? '+' : '-';
      out += ' ';
      const Int mag = abs(coeff);
      if (mag != 1 || term.factors.empty()) out += mag.get_str();
      for (std::size_t i = 0; i < term.factors.size(); ++i) {
        if (i || mag != 1) out += "·";
        out += term.factors[i].to_string();
      }
    }
    return out;
  }

 private:
  std::map<ProductTerm, Int> terms_;
};

namespace detail {

/// Signed composition expansion shared by both determinantal directions:
/// sum over compositions (m_1,...,m_l) of m of (-1)^{m-l} times the product
/// of sub-segments [a + t_{i-1}, a + t_i - 1].
inline GrothendieckElement determinantal_expand(const Segment& seg) {
  const std::int64_t m = seg.length();
  GrothendieckElement out;
  for (const auto& parts : compositions(m)) {
    std::vector<Segment> factors;
    factors.reserve(parts.size());
    Rat start = seg.a;
    for (auto mi : parts) {
      factors.push_back(Segment::make(seg.rho, start, start + (mi - 1)));
      start += mi;
    }
    const bool negative = (m - static_cast<std::int64_t>(parts.size())) % 2 != 0;
    out.add(ProductTerm::make(std::move(factors)), Int(negative ? -1 : 1));
  }
  return out;
}

}  // namespace detail

/// L(rho,[a,b]) written in the Z basis: exactly 2^{m-1} signed products of
/// Z-segments, one per composition of m.
inline GrothendieckElement tadic_expand_L(const Segment& seg) {
  return detail::determinantal_expand(seg);
}

/// Z(rho,[a,b]) written in the L basis; mirror of tadic_expand_L.
inline GrothendieckElement tadic_expand_Z(const Segment& seg) {
  return detail::determinantal_expand(seg);
}

/// Linear extension of a per-segment expansion over an element: each factor
/// of each term is expanded and the results are multiplied back out.
template <typename Expander>
GrothendieckElement expand_linearly(const GrothendieckElement& element,
                                    Expander&& expand_segment) {
  GrothendieckElement out;
  for (const auto& [term, coeff] : element.terms()) {
    GrothendieckElement prod = GrothendieckElement::single(ProductTerm::make({}));
    for (const auto& factor : term.factors) prod = prod * expand_segment(factor);
    for (const auto& [t, c] : prod.terms()) out.add(t, coeff * c);
  }
  return out;
}

/// An essentially square integrable representation of the cover, in the
/// classification bookkeeping L(rho~,[0,m'-1]): the cover it lives on, an
/// opaque name for rho~, the cuspidal-support block of its lift, and m'.
/// Central characters are suppressed: all dimension outputs are independent
/// of the compatible character chosen.
struct MetaplecticSqrtLabel {
  CoverParams cover;
  std::string rho_cover_name;
  Segment mc_image;  // L(rho,[a,a+s-1])
  std::int64_t m_prime = 1;
  bool cuspidal = false;
};

/// Classifies the genuine square integrable representation lifting to
/// L(rho,[a,b]): requires the order s of rho's mu_n-character to divide
/// m = b-a+1 (central-character triviality on mu_n), and produces
/// m' = m/s with cuspidal support block L(rho,[a,a+s-1]). Cuspidal iff s = m.
inline MetaplecticSqrtLabel mc_sqrt_classify(const CoverParams& cover,
                                             const CuspidalLabel& rho,
                                             const Rat& a, const Rat& b) {
  require(rho.n == cover.n, "label and cover have different mu_n orders");
  const Segment full = Segment::make(rho, a, b);
  const std::int64_t m = full.length();
  require(cover.r == rho.r0 * m, "cover rank must be r0·m");
  const std::int64_t s = rho.order();
  require(m % s == 0, "not metic: central character obstructed on mu_n");
  MetaplecticSqrtLabel out;
  out.cover = cover;
  out.rho_cover_name = rho.name + "~";
  out.mc_image = Segment::make(rho, a, a + (s - 1));
  out.m_prime = m / s;
  out.cuspidal = (s == m);
  return out;
}

/// The reducibility point s(rho~) = m/n, where m is the cuspidal-support
/// length of the lift of rho~. Returned in lowest terms.
inline Rat s_of_cuspidal_cover(std::int64_t n, std::int64_t m) {
  require(n >= 1 && m >= 1, "reducibility point needs positive m, n");
  Rat out(m, n);
  out.canonicalize();
  return out;
}

/// Segment data (rho~,[a,b]) for a square integrable representation of the
/// cover on total rank `rank`; the cuspidal rank is rank/length.
struct MetaplecticSegment {
  std::string rho_name;
  Rat a, b;
  std::int64_t rank = 1;

  static MetaplecticSegment make(std::string rho_name, Rat a, Rat b,
                                 std::int64_t rank) {
    Rat diff = b - a;
    diff.canonicalize();
    require(diff.get_den() == 1 && diff.get_num() >= 0,
            "segment endpoints must differ by a nonnegative integer");
    const std::int64_t m = diff.get_num().get_si() + 1;
    require(rank >= 1 && rank % m == 0,
            "segment length must divide the total rank");
    return MetaplecticSegment{std::move(rho_name), std::move(a), std::move(b),
                              rank};
  }

  std::int64_t length() const {
    Rat diff = b - a;
    return diff.get_num().get_si() + 1;
  }

  friend bool operator==(const MetaplecticSegment&,
                         const MetaplecticSegment&) = default;
};

/// The two tensor factors of a maximal-parabolic Jacquet module; either side
/// may be absent in the degenerate l = 0 / l = rank cases.
using JacquetFactors = std::pair<std::optional<MetaplecticSegment>,
                                 std::optional<MetaplecticSegment>>;

/// Jacquet module of L(rho~,[a,b]) along (l, r-l): zero unless r | ml, in
/// which case it is L(rho~,[b-l'+1,b]) tensor L(rho~,[a,b-l']) with l' = ml/r.
inline std::optional<JacquetFactors> jacquet_L_metaplectic(
    const MetaplecticSegment& seg, std::int64_t l) {
  const std::int64_t r = seg.rank;
  require(l >= 0 && l <= r, "Jacquet cut must satisfy 0 <= l <= rank");
  const std::int64_t m = seg.length();
  if ((m * l) % r != 0) return std::nullopt;
  const std::int64_t l_prime = m * l / r;
  JacquetFactors out;
  if (l > 0)
    out.first = MetaplecticSegment::make(seg.rho_name, seg.b - (l_prime - 1),
                                         seg.b, l);
  if (l < r)
    out.second = MetaplecticSegment::make(seg.rho_name, seg.a,
                                          seg.b - l_prime, r - l);
  return out;
}

}  // namespace kpc
