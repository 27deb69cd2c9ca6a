#pragma once

// Bigraded exterior calculus at a point of the (graded) covariant phase
// space. Elements are sparse sums of
//
//     coefficient * (odd symbol monomial) * (generator word)
//
// where odd symbols are the Grassmann ghost/ghost-momentum values (eta^A,
// P_a, Ps_a) and generators are coordinate 1-forms or tangent directions.
// Every object carries a bidegree (wedge degree, Grassmann parity); two
// wedge-degree-1 generators a, b commute past each other with the sign
// (-1)^{1 + g(a) g(b)}, so even 1-forms anticommute while Grassmann-odd
// 1-forms (d eta, dP) are symmetric. Odd 0-form symbols anticommute among
// themselves and with odd generators.
//
// The engine provides the wedge product, the left interior product of a
// multivector word ((X ^ Y) _| rho := Y _| (X _| rho)), the Grassmann left
// derivative, and the vertical exterior derivative of observable functors
// (coefficient derivatives taken exactly with dual numbers).

#include <cstdint>
#include <functional>
#include <map>

#include "akv/connection.hpp"

namespace akv {

// ---- generators -----------------------------------------------------------

// Form kinds first, vector kinds second, in mirrored order.
enum class GK : uint8_t {
  FDx = 0, FDu, FDq, FDqs, FDeta, FDPg, FDPgs, FDpA,
  VDx, VDu, VDq, VDqs, VDeta, VDPg, VDPgs, VDpA,
  kCount
};

constexpr bool is_form_kind(GK k) { return uint8_t(k) < uint8_t(GK::VDx); }
constexpr GK form_kind_of(GK vk) { return GK(uint8_t(vk) - 8); }
constexpr bool is_odd_kind(GK k) {
  switch (k) {
    case GK::FDeta: case GK::FDPg: case GK::FDPgs:
    case GK::VDeta: case GK::VDPg: case GK::VDPgs: return true;
    default: return false;
  }
}

constexpr uint8_t gen_id(GK k, int index) { return uint8_t((uint8_t(k) << 4) | index); }
constexpr GK gen_kind(uint8_t id) { return GK(id >> 4); }
constexpr int gen_index(uint8_t id) { return id & 0xf; }

// sign of swapping two adjacent wedge-degree-1 generators
inline int swap_sign(uint8_t a, uint8_t b) {
  return (is_odd_kind(gen_kind(a)) && is_odd_kind(gen_kind(b))) ? +1 : -1;
}

// ---- odd symbol masks -------------------------------------------------------
// bit A           : eta^A          (A < m)
// bit m + a       : P_a            (ghost momentum block, a < m/2)
// bit m + m/2 + a : Ps_a

struct OddSyms {
  int m = 0;
  int eta_bit(int A) const { return A; }
  int pg_bit(int a) const { return m + a; }
  int pgs_bit(int a) const { return m + m / 2 + a; }
  int count() const { return 2 * m; }
};

inline int mask_mul_sign(uint16_t a, uint16_t b) {
  // number of (i in a, j in b) pairs with i > j
  int inv = 0;
  for (int j = 0; j < 16; ++j)
    if (b & (1u << j)) {
      uint16_t higher = a & ~((1u << (j + 1)) - 1);
      inv += __builtin_popcount(higher);
    }
  return (inv & 1) ? -1 : +1;
}

// ghost number: eta bits count +1, momentum bits count -1
inline int ghost_number(uint16_t mask, const OddSyms& os) {
  int gh = 0;
  for (int b = 0; b < os.count(); ++b)
    if (mask & (1u << b)) gh += b < os.m ? +1 : -1;
  return gh;
}

// ---- element ----------------------------------------------------------------

struct Key {
  uint64_t word = 0;  // packed generator ids, most significant byte first
  uint16_t mask = 0;
  uint8_t len = 0;
  friend bool operator<(const Key& a, const Key& b) {
    if (a.mask != b.mask) return a.mask < b.mask;
    if (a.len != b.len) return a.len < b.len;
    return a.word < b.word;
  }
  uint8_t gen(int i) const { return uint8_t(a_shift(i)); }
  uint64_t a_shift(int i) const { return (word >> (8 * (7 - i))) & 0xff; }
  void push(uint8_t g) { word |= uint64_t(g) << (8 * (7 - len)); ++len; }
};

template <class S>
struct Element {
  std::map<Key, Cx<S>> terms;

  static Element zero() { return {}; }
  static Element scalar(const Cx<S>& c) {
    Element e;
    e.terms[Key{}] = c;
    return e;
  }
  static Element generator(GK k, int index, const Cx<S>& c = Cx<S>(S(1))) {
    Element e;
    Key key;
    key.push(gen_id(k, index));
    e.terms[key] = c;
    return e;
  }
  static Element symbol(int bit, const Cx<S>& c = Cx<S>(S(1))) {
    Element e;
    Key key;
    key.mask = uint16_t(1u << bit);
    e.terms[key] = c;
    return e;
  }

  void add_term(const Key& k, const Cx<S>& c) {
    auto [it, fresh] = terms.emplace(k, c);
    if (!fresh) it->second += c;
  }

  Element& operator+=(const Element& o) {
    for (auto& [k, c] : o.terms) add_term(k, c);
    return *this;
  }
  Element& operator-=(const Element& o) {
    for (auto& [k, c] : o.terms) add_term(k, Cx<S>(S(-1)) * c);
    return *this;
  }
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  Element operator*(const Cx<S>& s) const {
    Element r;
    for (auto& [k, c] : terms) r.terms[k] = c * s;
    return r;
  }
  Element operator-() const { return *this * Cx<S>(S(-1)); }

  double max_abs() const {
    double r = 0;
    for (auto& [k, c] : terms) r = std::max(r, cx_abs(c));
    return r;
  }
  Cx<S> coefficient(const Key& k) const {
    auto it = terms.find(k);
    return it == terms.end() ? Cx<S>{} : it->second;
  }
  void prune(double eps = 0.0) {
    for (auto it = terms.begin(); it != terms.end();)
      it = cx_abs(it->second) <= eps ? terms.erase(it) : std::next(it);
  }
};

// normal-order a concatenation of two words; returns 0 sign if the product
// vanishes (repeated even-parity generator)
inline int normal_order(const Key& a, const Key& b, Key& out) {
  uint8_t buf[16];
  int n = 0;
  for (int i = 0; i < a.len; ++i) buf[n++] = a.gen(i);
  for (int i = 0; i < b.len; ++i) buf[n++] = b.gen(i);
  int sign = 1;
  // insertion sort with bigraded swap signs
  for (int i = 1; i < n; ++i) {
    uint8_t x = buf[i];
    int j = i - 1;
    while (j >= 0 && buf[j] > x) {
      buf[j + 1] = buf[j];
      sign *= swap_sign(x, buf[j]);
      --j;
    }
    buf[j + 1] = x;
  }
  for (int i = 0; i + 1 < n; ++i)
    if (buf[i] == buf[i + 1] && swap_sign(buf[i], buf[i]) < 0) return 0;
  out = Key{};
  out.mask = 0;
  for (int i = 0; i < n; ++i) out.push(buf[i]);
  return sign;
}

inline int odd_gen_count(const Key& k) {
  int c = 0;
  for (int i = 0; i < k.len; ++i)
    if (is_odd_kind(gen_kind(k.gen(i)))) ++c;
  return c;
}

// exact zero across all nested dual components (mag() only sees the value
// part, which is not enough to discard a term)
inline bool strictly_zero(double x) { return x == 0.0; }
template <class T>
bool strictly_zero(const Dual<T>& x) {
  return strictly_zero(x.val) && strictly_zero(x.der);
}
template <class T>
bool strictly_zero(const Cx<T>& z) {
  return strictly_zero(z.re) && strictly_zero(z.im);
}

template <class S>
Element<S> wedge(const Element<S>& A, const Element<S>& B) {
  Element<S> out;
  for (auto& [ka, ca] : A.terms)
    for (auto& [kb, cb] : B.terms) {
      if (ka.mask & kb.mask) continue;  // nilpotent odd symbols
      int sign = 1;
      // move B's symbols left past A's generator word
      if (__builtin_popcount(kb.mask) & 1)
        if (odd_gen_count(ka) & 1) sign = -sign;
      sign *= mask_mul_sign(ka.mask, kb.mask);
      Key key;
      int wsign = normal_order(ka, kb, key);
      if (wsign == 0) continue;
      key.mask = uint16_t(ka.mask | kb.mask);
      Cx<S> c = ca * cb * Cx<S>(S(sign * wsign));
      if (strictly_zero(c)) continue;
      out.add_term(key, c);
    }
  return out;
}

template <class S>
Element<S> operator*(const Element<S>& a, const Element<S>& b) {
  return wedge(a, b);
}

// left interior product by a single vector generator; the target must be a
// pure form element
template <class S>
Element<S> interior_gen(uint8_t vid, const Element<S>& rho) {
  const GK want = form_kind_of(gen_kind(vid));
  const int idx = gen_index(vid);
  const bool vodd = is_odd_kind(gen_kind(vid));
  Element<S> out;
  for (auto& [k, c] : rho.terms) {
    int cross = 1;
    if (vodd && (__builtin_popcount(k.mask) & 1)) cross = -1;  // past the symbols
    for (int i = 0; i < k.len; ++i) {
      uint8_t g = k.gen(i);
      if (gen_kind(g) == want && gen_index(g) == idx) {
        Key rest;
        rest.mask = k.mask;
        for (int j = 0; j < k.len; ++j)
          if (j != i) rest.push(k.gen(j));
        out.add_term(rest, c * Cx<S>(S(cross)));
      }
      cross *= swap_sign(vid, g);
    }
  }
  return out;
}

// contraction of a (form-valued) multivector element with a form element:
// per term, fold the vector legs left-to-right, then wedge the remaining
// coefficient (symbols and form legs) back on
template <class S>
Element<S> contract(const Element<S>& mv, const Element<S>& rho) {
  Element<S> out;
  for (auto& [k, c] : mv.terms) {
    Key formpart;
    formpart.mask = k.mask;
    Element<S> acc = rho;
    bool first_vec_seen = false;
    for (int i = 0; i < k.len; ++i) {
      uint8_t g = k.gen(i);
      if (is_form_kind(gen_kind(g))) {
        formpart.push(g);
      } else {
        acc = interior_gen(g, acc);
        first_vec_seen = true;
      }
    }
    (void)first_vec_seen;
    if (acc.terms.empty()) continue;
    Element<S> head;
    head.terms[formpart] = c;
    out += wedge(head, acc);
  }
  return out;
}

// Grassmann left derivative with respect to an odd symbol bit
template <class S>
Element<S> left_deriv_symbol(int bit, const Element<S>& e) {
  Element<S> out;
  const uint16_t b = uint16_t(1u << bit);
  for (auto& [k, c] : e.terms) {
    if (!(k.mask & b)) continue;
    int below = __builtin_popcount(k.mask & (b - 1));
    Key rest = k;
    rest.mask = uint16_t(k.mask & ~b);
    out.add_term(rest, c * Cx<S>(S(below & 1 ? -1 : 1)));
  }
  return out;
}

// value / derivative parts of elements over dual scalars
template <class S>
Element<S> der_part(const Element<Dual<S>>& e) {
  Element<S> out;
  for (auto& [k, c] : e.terms) {
    Cx<S> d(c.re.der, c.im.der);
    if (!strictly_zero(d)) out.add_term(k, d);
  }
  return out;
}
template <class S>
Element<S> val_part(const Element<Dual<S>>& e) {
  Element<S> out;
  for (auto& [k, c] : e.terms) {
    Cx<S> d(c.re.val, c.im.val);
    if (!strictly_zero(d)) out.add_term(k, d);
  }
  return out;
}

// ---- points and the vertical exterior derivative ---------------------------

// One point type serves the unconstrained space (u, pA), the constrained
// space (u, q, qs) and its graded extension (ghost values stay symbolic).
template <class S>
struct GPoint {
  Vec<S> u;
  Mat<S> pA;         // frame momenta p_A^alpha, m x 2 (unconstrained space)
  Vec<Cx<S>> q, qs;  // constrained blocks p_a^z, p_{a*}^{z*}

  template <class T>
  GPoint<T> cast() const {
    GPoint<T> o;
    o.u = Vec<T>(u.n);
    for (int i = 0; i < u.n; ++i) o.u[i] = T(u[i]);
    o.pA = Mat<T>(pA.rows, pA.cols);
    for (int i = 0; i < pA.rows; ++i)
      for (int j = 0; j < pA.cols; ++j) o.pA(i, j) = T(pA(i, j));
    o.q = Vec<Cx<T>>(q.n);
    o.qs = Vec<Cx<T>>(qs.n);
    for (int i = 0; i < q.n; ++i) o.q[i] = Cx<T>(T(q[i].re), T(q[i].im));
    for (int i = 0; i < qs.n; ++i) o.qs[i] = Cx<T>(T(qs[i].re), T(qs[i].im));
    return o;
  }
};

enum class SpaceKind { kUnconstrained, kConstrained, kGraded };

struct SpaceSig {
  SpaceKind kind = SpaceKind::kUnconstrained;
  int m = 0;
  OddSyms odd() const { return {m}; }
  int h() const { return m / 2; }
};

// d^V of an observable functor: sum over fibre coordinates of
// d(coord) ^ dF/d(coord), with even derivatives taken by dual lifting and
// odd derivatives taken algebraically on the symbols. Coefficients never
// depend on the base coordinates x, so this is also the full d.
template <class S, class F>
Element<S> d_vertical(const SpaceSig& sig, F&& obs, const GPoint<S>& pt) {
  Element<S> out;
  const int m = sig.m, h = sig.h();
  auto lift = [&](auto seed_fn) {
    GPoint<Dual<S>> lp = pt.template cast<Dual<S>>();
    seed_fn(lp);
    return lp;
  };
  for (int i = 0; i < m; ++i) {
    auto lp = lift([&](GPoint<Dual<S>>& p) { p.u[i].der = S(1); });
    Element<S> di = der_part(obs(lp));
    out += wedge(Element<S>::generator(GK::FDu, i), di);
  }
  if (sig.kind == SpaceKind::kUnconstrained) {
    for (int A = 0; A < m; ++A)
      for (int al = 0; al < 2; ++al) {
        auto lp = lift([&](GPoint<Dual<S>>& p) { p.pA(A, al).der = S(1); });
        out += wedge(Element<S>::generator(GK::FDpA, A * 2 + al), der_part(obs(lp)));
      }
    return out;
  }
  for (int a = 0; a < h; ++a) {
    // holomorphic dependence: real-part seeding gives the complex derivative
    auto lp = lift([&](GPoint<Dual<S>>& p) { p.q[a].re.der = S(1); });
    out += wedge(Element<S>::generator(GK::FDq, a), der_part(obs(lp)));
    auto lps = lift([&](GPoint<Dual<S>>& p) { p.qs[a].re.der = S(1); });
    out += wedge(Element<S>::generator(GK::FDqs, a), der_part(obs(lps)));
  }
  if (sig.kind == SpaceKind::kGraded) {
    Element<S> at = obs(pt);
    OddSyms os = sig.odd();
    for (int A = 0; A < m; ++A)
      out += wedge(Element<S>::generator(GK::FDeta, A),
                   left_deriv_symbol(os.eta_bit(A), at));
    for (int a = 0; a < h; ++a) {
      out += wedge(Element<S>::generator(GK::FDPg, a),
                   left_deriv_symbol(os.pg_bit(a), at));
      out += wedge(Element<S>::generator(GK::FDPgs, a),
                   left_deriv_symbol(os.pgs_bit(a), at));
    }
  }
  return out;
}

// horizontal (n-1)-form basis: dx_alpha := d/dx^alpha _| (dx^1 ^ dx^2)
template <class S>
Element<S> dx_lower(int alpha) {
  return alpha == 0 ? Element<S>::generator(GK::FDx, 1)
                    : -Element<S>::generator(GK::FDx, 0);
}

}  // namespace akv
