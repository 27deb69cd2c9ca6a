#pragma once

// Vielbein frames: real orthonormal anholonomic frames on M, complex
// J-eigenframe (pseudoholomorphic) blocks, holomorphic surface frames on
// Sigma, and the combined blocks relating them. Everything is templated
// on the scalar so frame fields can be differentiated exactly.

#include <map>
#include <string>

#include "akv/almost_kahler.hpp"
#include "akv/cx.hpp"
#include "akv/linalg.hpp"

namespace akv {

// Columns of E are the frame vectors: E(i,A) = E^i_A. Ei is the inverse
// (coframe rows): Ei(A,i) = E^A_i.
template <class S>
struct RealFrame {
  Mat<S> E;
  Mat<S> Ei;
};

// Holomorphic block of the J-eigenframe. Starred blocks are the complex
// conjugates and are derived, never stored.
template <class S>
struct ComplexFrame {
  Mat<Cx<S>> Eh;   // m x m/2, columns E^i_a with J E_a = +i E_a
  Mat<Cx<S>> Ehi;  // m/2 x m, rows E^a_i (duality-normalized)
};

template <class S>
struct SurfaceFrame {
  Mat<Cx<S>> Ez;   // 2 x 1 column  E^alpha_z
  Mat<Cx<S>> Ezi;  // 1 x 2 row     E^z_alpha
};

template <class S>
struct CombinedFrame {
  Mat<Cx<S>> Eca;   // m x m/2:  E^A_a = E^A_i E^i_a
  Mat<Cx<S>> Ecai;  // m/2 x m:  E^a_A = E^a_i E^i_A
};

template <class S>
struct FrameBundle {
  RealFrame<S> real;
  ComplexFrame<S> cplx;
  SurfaceFrame<S> surf;
  CombinedFrame<S> comb;
};

// Gram-Schmidt orthonormalization of the coordinate basis against g,
// processed in coordinate order. Deterministic canonical representative
// of the frame gauge class.
template <class S>
RealFrame<S> gram_schmidt_frame(const Mat<S>& g, double pivot_tol = 1e-12) {
  const int n = g.rows;
  Mat<S> E(n, n);
  for (int A = 0; A < n; ++A) {
    Vec<S> v(n);
    v[A] = S(1);
    for (int B = 0; B < A; ++B) {
      // subtract g-projection onto column B
      S proj{};
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) proj += E(i, B) * g(i, j) * v[j];
      for (int i = 0; i < n; ++i) v[i] -= proj * E(i, B);
    }
    S norm2{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) norm2 += v[i] * g(i, j) * v[j];
    if (value(norm2) <= pivot_tol)
      throw Error("gram_schmidt_frame: metric not positive definite (pivot below tolerance)");
    S inv_norm = S(1) / sqrt(norm2);
    for (int i = 0; i < n; ++i) E(i, A) = v[i] * inv_norm;
  }
  return {E, inverse(E)};
}

// J-eigenframe: project the orthonormal frame with (1 - iJ)/2, keep a
// maximal independent column set by pivoted elimination, and normalize by
// inverting the full (holomorphic | antiholomorphic) matrix.
template <class S>
ComplexFrame<S> pseudoholomorphic_frame(const Mat<S>& J, const RealFrame<S>& real,
                                        double rank_tol = 1e-10) {
  const int n = J.rows;
  const int h = n / 2;
  const Cx<S> mi(S(0), S(-1));
  Mat<Cx<S>> cand(n, n);
  for (int A = 0; A < n; ++A)
    for (int i = 0; i < n; ++i) {
      Cx<S> s(real.E(i, A) * S(0.5));
      Cx<S> jpart{};
      for (int j = 0; j < n; ++j) jpart += Cx<S>(J(i, j) * real.E(j, A));
      cand(i, A) = s + mi * jpart * Cx<S>(S(0.5));
    }
  // pivoted column selection on a copy
  Mat<Cx<S>> work = cand;
  std::array<int, kMaxDim> selected{};
  int nsel = 0;
  std::array<bool, kMaxDim> used{};
  for (int step = 0; step < h; ++step) {
    int best_col = -1, best_row = -1;
    double best = rank_tol;
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      for (int r = 0; r < n; ++r)
        if (cx_abs(work(r, c)) > best) {
          best = cx_abs(work(r, c));
          best_col = c;
          best_row = r;
        }
    }
    if (best_col < 0)
      throw Error("pseudoholomorphic_frame: projected set rank-deficient (broken J)");
    used[best_col] = true;
    selected[nsel++] = best_col;
    // eliminate the pivot row from the remaining columns
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      Cx<S> f = work(best_row, c) / work(best_row, best_col);
      for (int r = 0; r < n; ++r) work(r, c) -= f * work(r, best_col);
    }
  }
  // stable order: ascending original column index
  for (int i = 0; i < nsel; ++i)
    for (int j = i + 1; j < nsel; ++j)
      if (selected[j] < selected[i]) std::swap(selected[i], selected[j]);

  ComplexFrame<S> f;
  f.Eh = Mat<Cx<S>>(n, h);
  for (int a = 0; a < h; ++a)
    for (int i = 0; i < n; ++i) f.Eh(i, a) = cand(i, selected[a]);
  // duality normalization through the full inverse [Eh | conj(Eh)]^-1
  Mat<Cx<S>> W(n, n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < h; ++a) {
      W(i, a) = f.Eh(i, a);
      W(i, h + a) = conj(f.Eh(i, a));
    }
  Mat<Cx<S>> Wi;
  try {
    Wi = inverse(W);
  } catch (const Error&) {
    throw Error("pseudoholomorphic_frame: eigenbasis not invertible (broken J)");
  }
  f.Ehi = Mat<Cx<S>>(h, n);
  for (int a = 0; a < h; ++a)
    for (int i = 0; i < n; ++i) f.Ehi(a, i) = Wi(a, i);
  return f;
}

template <class S>
SurfaceFrame<S> surface_frame(const Mat<double>& eps) {
  const Cx<S> mi(S(0), S(-1));
  Mat<Cx<S>> P(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      P(i, j) = Cx<S>(S(i == j ? 0.5 : 0.0)) + mi * Cx<S>(S(0.5 * eps(i, j)));
  int pick = cx_abs(P(0, 0)) + cx_abs(P(1, 0)) >= cx_abs(P(0, 1)) + cx_abs(P(1, 1)) ? 0 : 1;
  SurfaceFrame<S> f;
  f.Ez = Mat<Cx<S>>(2, 1);
  f.Ez(0, 0) = P(0, pick);
  f.Ez(1, 0) = P(1, pick);
  Mat<Cx<S>> W(2, 2);
  W(0, 0) = f.Ez(0, 0); W(1, 0) = f.Ez(1, 0);
  W(0, 1) = conj(f.Ez(0, 0)); W(1, 1) = conj(f.Ez(1, 0));
  Mat<Cx<S>> Wi = inverse(W);
  f.Ezi = Mat<Cx<S>>(1, 2);
  f.Ezi(0, 0) = Wi(0, 0);
  f.Ezi(0, 1) = Wi(0, 1);
  return f;
}

template <class S>
CombinedFrame<S> combine_frames(const RealFrame<S>& real, const ComplexFrame<S>& cplx) {
  if (real.E.rows != cplx.Eh.rows) throw Error("combine_frames: dimension mismatch");
  CombinedFrame<S> c;
  c.Eca = complexify(real.Ei) * cplx.Eh;   // (A,a)
  c.Ecai = cplx.Ehi * complexify(real.E);  // (a,A)
  return c;
}

// --- frame fields ------------------------------------------------------------
//
// A frame field is the Gram-Schmidt frame optionally composed with a
// constant rotation (gauge spot-checks) or a first-order correction
// exp(sum_j M_j (u^j - u0^j)) (synchronous and Darboux frames).

template <class S>
struct FrameFieldEval {
  RealFrame<S> at;
};

struct FrameField {
  enum class Kind { kGramSchmidt, kRotated, kCorrected };
  Kind kind = Kind::kGramSchmidt;
  Mat<double> rot;                 // kRotated: constant SO(m) matrix
  Vec<double> base;                // kCorrected: expansion point u0
  std::array<Mat<double>, kMaxDim> gen;  // kCorrected: generators M_j

  static FrameField gram_schmidt() { return {}; }
  static FrameField rotated(const Mat<double>& R) {
    FrameField f;
    f.kind = Kind::kRotated;
    f.rot = R;
    return f;
  }
  static FrameField corrected(const Vec<double>& u0, const std::array<Mat<double>, kMaxDim>& Mj) {
    FrameField f;
    f.kind = Kind::kCorrected;
    f.base = u0;
    f.gen = Mj;
    return f;
  }

  template <class S>
  RealFrame<S> eval(const AmbientStructure& amb, const Vec<S>& u) const {
    RealFrame<S> gs = gram_schmidt_frame(amb.g(u));
    switch (kind) {
      case Kind::kGramSchmidt: return gs;
      case Kind::kRotated: {
        Mat<S> R(rot.rows, rot.cols);
        for (int i = 0; i < rot.rows; ++i)
          for (int j = 0; j < rot.cols; ++j) R(i, j) = S(rot(i, j));
        Mat<S> E = gs.E * R;
        return {E, inverse(E)};
      }
      case Kind::kCorrected: {
        const int n = amb.dim();
        Mat<S> M(n, n);
        for (int j = 0; j < n; ++j) {
          S d = u[j] - S(base[j]);
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) M(a, b) += S(gen[j](a, b)) * d;
        }
        Mat<S> E = gs.E * expm(M);
        if (rot.rows > 0) {
          Mat<S> R(rot.rows, rot.cols);
          for (int i = 0; i < rot.rows; ++i)
            for (int j = 0; j < rot.cols; ++j) R(i, j) = S(rot(i, j));
          E = E * R;
        }
        return {E, inverse(E)};
      }
    }
    throw Error("frame field: bad kind");
  }
};

// Build every frame family at a point.
template <class S>
FrameBundle<S> build_frames(const AmbientStructure& amb, const SurfaceStructure& surf,
                            const FrameField& field, const Vec<S>& u) {
  FrameBundle<S> fb;
  fb.real = field.eval(amb, u);
  fb.cplx = pseudoholomorphic_frame(amb.J(u), fb.real);
  fb.surf = surface_frame<S>(surf.eps);
  fb.comb = combine_frames(fb.real, fb.cplx);
  return fb;
}

// --- identity report ---------------------------------------------------------

using FrameReport = std::map<std::string, double>;

FrameReport verify_frame_identities(const AmbientStructure& amb, const SurfaceStructure& surf,
                                    const FrameBundle<double>& fb, const Vec<double>& u);

}  // namespace akv
