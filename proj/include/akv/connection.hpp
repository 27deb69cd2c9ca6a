#pragma once

// Levi-Civita connection (holonomic and anholonomic), curvature, Cartan
// structure functions with the Lie-bracket cross-check, synchronous and
// Darboux frame corrections, and the almost-Kahler identity suite.
//
// Index conventions, fixed here and imported by every consumer:
//   G(i,j,k)      holonomic Gamma^i_{jk}, j is the derivative direction
//   DJ(k,i,j)     D_k J^i_j
//   DDJ(q,k,i,j)  D_q D_k J^i_j
//   R(i,j,k,l)    [D_k, D_l] V^i = R^i_{jkl} V^j ; Ricci_{jl} = R^i_{jil}
//   Ganh(A,B,C)   anholonomic Gamma^A_{BC}, B is the direction
//   C(A,B,C)      Cartan structure functions Gamma^A_{BC} - Gamma^A_{CB}

#include <map>
#include <string>
#include <vector>

#include "akv/frames.hpp"

namespace akv {

template <class S>
struct Ten3 {
  int n = 0;
  std::vector<S> a;
  Ten3() = default;
  explicit Ten3(int n_) : n(n_), a(size_t(n_) * n_ * n_) {}
  S& operator()(int i, int j, int k) { return a[(size_t(i) * n + j) * n + k]; }
  const S& operator()(int i, int j, int k) const { return a[(size_t(i) * n + j) * n + k]; }
};

template <class S>
struct Ten4 {
  int n = 0;
  std::vector<S> a;
  Ten4() = default;
  explicit Ten4(int n_) : n(n_), a(size_t(n_) * n_ * n_ * n_) {}
  S& operator()(int i, int j, int k, int l) {
    return a[((size_t(i) * n + j) * n + k) * n + l];
  }
  const S& operator()(int i, int j, int k, int l) const {
    return a[((size_t(i) * n + j) * n + k) * n + l];
  }
};

template <class S>
double max_abs3(const Ten3<S>& t) {
  double r = 0;
  for (const S& x : t.a) r = std::max(r, mag(x));
  return r;
}
template <class S>
double max_abs4(const Ten4<S>& t) {
  double r = 0;
  for (const S& x : t.a) r = std::max(r, mag(x));
  return r;
}

// ---- holonomic objects -------------------------------------------------

template <class S>
Vec<Dual<S>> seed_direction(const Vec<S>& u, int d) {
  Vec<Dual<S>> x(u.n);
  for (int i = 0; i < u.n; ++i) x[i] = Dual<S>(u[i], S(i == d ? 1 : 0));
  return x;
}

template <class S>
Ten3<S> christoffel(const AmbientStructure& amb, const Vec<S>& u) {
  const int n = amb.dim();
  Mat<S> gi = inverse(amb.g(u));
  std::vector<Mat<S>> dg;
  dg.reserve(n);
  for (int d = 0; d < n; ++d) {
    Mat<Dual<S>> gd = amb.g(seed_direction(u, d));
    Mat<S> m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = gd(i, j).der;
    dg.push_back(m);
  }
  Ten3<S> G(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        S s{};
        for (int l = 0; l < n; ++l)
          s += gi(i, l) * (dg[j](l, k) + dg[k](l, j) - dg[l](j, k));
        G(i, j, k) = s * S(0.5);
      }
  return G;
}

template <class S>
Ten3<S> dj_hol(const AmbientStructure& amb, const Vec<S>& u) {
  const int n = amb.dim();
  Ten3<S> G = christoffel(amb, u);
  Mat<S> J = amb.J(u);
  Ten3<S> DJ(n);
  for (int d = 0; d < n; ++d) {
    Mat<Dual<S>> Jd = amb.J(seed_direction(u, d));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        S s = Jd(i, j).der;
        for (int l = 0; l < n; ++l) s += G(i, d, l) * J(l, j) - G(l, d, j) * J(i, l);
        DJ(d, i, j) = s;
      }
  }
  return DJ;
}

template <class S>
Ten4<S> ddj_hol(const AmbientStructure& amb, const Vec<S>& u) {
  const int n = amb.dim();
  Ten3<S> G = christoffel(amb, u);
  Ten3<S> DJ = dj_hol(amb, u);
  Ten4<S> DDJ(n);
  for (int q = 0; q < n; ++q) {
    Ten3<Dual<S>> DJq = dj_hol(amb, seed_direction(u, q));
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          S s = DJq(k, i, j).der;
          for (int l = 0; l < n; ++l)
            s += -G(l, q, k) * DJ(l, i, j) + G(i, q, l) * DJ(k, l, j) - G(l, q, j) * DJ(k, i, l);
          DDJ(q, k, i, j) = s;
        }
  }
  return DDJ;
}

template <class S>
Ten4<S> riemann_hol(const AmbientStructure& amb, const Vec<S>& u) {
  const int n = amb.dim();
  Ten3<S> G = christoffel(amb, u);
  std::vector<Ten3<S>> dG;
  dG.reserve(n);
  for (int d = 0; d < n; ++d) {
    Ten3<Dual<S>> Gd = christoffel(amb, seed_direction(u, d));
    Ten3<S> m(n);
    for (size_t idx = 0; idx < m.a.size(); ++idx) m.a[idx] = Gd.a[idx].der;
    dG.push_back(std::move(m));
  }
  Ten4<S> R(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          S s = dG[k](i, l, j) - dG[l](i, k, j);
          for (int m = 0; m < n; ++m)
            s += G(i, k, m) * G(m, l, j) - G(i, l, m) * G(m, k, j);
          R(i, j, k, l) = s;
        }
  return R;
}

// C^m_ij = (1/2) J^m_n (D_i J^n_j - D_j J^n_i): the structure-function
// tensor of the deformation algebra (equals the Darboux-frame Cartan
// structure functions pointwise).
template <class S>
Ten3<S> c_tensor_hol(const AmbientStructure& amb, const Vec<S>& u) {
  const int n = amb.dim();
  Mat<S> J = amb.J(u);
  Ten3<S> DJ = dj_hol(amb, u);
  Ten3<S> C(n);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        S s{};
        for (int nn = 0; nn < n; ++nn) s += J(m, nn) * (DJ(i, nn, j) - DJ(j, nn, i));
        C(m, i, j) = s * S(0.5);
      }
  return C;
}

// D_a C^m_ij of the tensor above (honest covariant derivative).
template <class S>
Ten4<S> dc_tensor_hol(const AmbientStructure& amb, const Vec<S>& u) {
  const int n = amb.dim();
  Ten3<S> G = christoffel(amb, u);
  Ten3<S> C = c_tensor_hol(amb, u);
  Ten4<S> DC(n);
  for (int a = 0; a < n; ++a) {
    Ten3<Dual<S>> Ca = c_tensor_hol(amb, seed_direction(u, a));
    for (int m = 0; m < n; ++m)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          S s = Ca(m, i, j).der;
          for (int l = 0; l < n; ++l)
            s += G(m, a, l) * C(l, i, j) - G(l, a, i) * C(m, l, j) - G(l, a, j) * C(m, i, l);
          DC(a, m, i, j) = s;
        }
  }
  return DC;
}

// ---- frame conversions --------------------------------------------------

// one upper index (first), rest lower
template <class S>
Ten3<S> to_frame_udd(const Ten3<S>& T, const RealFrame<S>& f) {
  const int n = T.n;
  Ten3<S> out(n);
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      for (int C = 0; C < n; ++C) {
        S s{};
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
              s += f.Ei(A, i) * f.E(j, B) * f.E(k, C) * T(i, j, k);
        out(A, B, C) = s;
      }
  return out;
}

// DJ-layout (k,i,j) with i upper: out(K,A,B) = E^k_K E^A_i E^j_B DJ(k,i,j)
template <class S>
Ten3<S> dj_to_frame(const Ten3<S>& DJ, const RealFrame<S>& f) {
  const int n = DJ.n;
  Ten3<S> out(n);
  for (int K = 0; K < n; ++K)
    for (int A = 0; A < n; ++A)
      for (int B = 0; B < n; ++B) {
        S s{};
        for (int k = 0; k < n; ++k)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              s += f.E(k, K) * f.Ei(A, i) * f.E(j, B) * DJ(k, i, j);
        out(K, A, B) = s;
      }
  return out;
}

// DC-layout (a,m,i,j) with m upper
template <class S>
Ten4<S> dc_to_frame(const Ten4<S>& DC, const RealFrame<S>& f) {
  const int n = DC.n;
  Ten4<S> out(n);
  for (int A = 0; A < n; ++A)
    for (int M = 0; M < n; ++M)
      for (int I = 0; I < n; ++I)
        for (int J2 = 0; J2 < n; ++J2) {
          S s{};
          for (int a = 0; a < n; ++a)
            for (int m = 0; m < n; ++m)
              for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                  s += f.E(a, A) * f.Ei(M, m) * f.E(i, I) * f.E(j, J2) * DC(a, m, i, j);
          out(A, M, I, J2) = s;
        }
  return out;
}

// R^i_jkl -> R^A_BKL
template <class S>
Ten4<S> riemann_to_frame(const Ten4<S>& R, const RealFrame<S>& f) {
  const int n = R.n;
  Ten4<S> out(n);
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      for (int K = 0; K < n; ++K)
        for (int L = 0; L < n; ++L) {
          S s{};
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                  s += f.Ei(A, i) * f.E(j, B) * f.E(k, K) * f.E(l, L) * R(i, j, k, l);
          out(A, B, K, L) = s;
        }
  return out;
}

template <class S>
Mat<S> frame_matrix_ud(const Mat<S>& T, const RealFrame<S>& f) {
  return f.Ei * T * f.E;
}

// ---- anholonomic connection and structure functions ----------------------

// Frame derivatives of the frame field: dE[j](i,C) = d_j E^i_C.
template <class S>
std::vector<Mat<S>> frame_partials(const AmbientStructure& amb, const FrameField& field,
                                   const Vec<S>& u) {
  const int n = amb.dim();
  std::vector<Mat<S>> dE;
  dE.reserve(n);
  for (int d = 0; d < n; ++d) {
    RealFrame<Dual<S>> fd = field.eval(amb, seed_direction(u, d));
    Mat<S> m(n, n);
    for (int i = 0; i < n; ++i)
      for (int C = 0; C < n; ++C) m(i, C) = fd.E(i, C).der;
    dE.push_back(std::move(m));
  }
  return dE;
}

template <class S>
Ten3<S> anholonomic_connection(const AmbientStructure& amb, const FrameField& field,
                               const Vec<S>& u) {
  const int n = amb.dim();
  RealFrame<S> f = field.eval(amb, u);
  std::vector<Mat<S>> dE = frame_partials(amb, field, u);
  Ten3<S> G = christoffel(amb, u);
  Ten3<S> out(n);
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      for (int C = 0; C < n; ++C) {
        S s{};
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            s += f.Ei(A, i) * f.E(j, B) * dE[j](i, C);
            for (int k = 0; k < n; ++k)
              s += f.Ei(A, i) * f.E(j, B) * f.E(k, C) * G(i, j, k);
          }
        out(A, B, C) = s;
      }
  return out;
}

template <class S>
Ten3<S> cartan_from_gamma(const Ten3<S>& Ganh) {
  const int n = Ganh.n;
  Ten3<S> C(n);
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      for (int Cc = 0; Cc < n; ++Cc) C(A, B, Cc) = Ganh(A, B, Cc) - Ganh(A, Cc, B);
  return C;
}

// Independent path: C^A_BC from Lie brackets of the frame vector fields.
template <class S>
Ten3<S> cartan_from_brackets(const AmbientStructure& amb, const FrameField& field,
                             const Vec<S>& u) {
  const int n = amb.dim();
  RealFrame<S> f = field.eval(amb, u);
  std::vector<Mat<S>> dE = frame_partials(amb, field, u);
  Ten3<S> out(n);
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      for (int C = 0; C < n; ++C) {
        S s{};
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            s += f.Ei(A, i) * (f.E(j, B) * dE[j](i, C) - f.E(j, C) * dE[j](i, B));
        out(A, B, C) = s;
      }
  return out;
}

struct CartanCheck {
  Ten3<double> C;          // from antisymmetrized Gamma
  double cross_residual;   // max |C_gamma - C_brackets|
};

// Two independent evaluations of the structure functions; disagreement
// beyond the abort threshold signals a broken connection pipeline.
CartanCheck cartan_structure_functions(const AmbientStructure& amb, const FrameField& field,
                                       const Vec<double>& u, double abort_tol = 1e-6);

// Ricci identity residual on J: [D_q,D_k]J^i_j - (R^i_rqk J^r_j - R^r_jqk J^i_r).
double ricci_identity_residual(const AmbientStructure& amb, const Vec<double>& u);

// D_A of a registered tensor field (valence up to 2), in frame indices.
std::vector<double> covariant_derivative_frame(const AmbientStructure& amb,
                                               const FrameField& field,
                                               const std::string& label, const Vec<double>& u);

// ---- corrected frames ----------------------------------------------------

// Frame with vanishing anholonomic connection coefficients at u0.
FrameField synchronous_frame_field(const AmbientStructure& amb, const Vec<double>& u0);

// Real anholonomic Darboux frame at u0: orthonormal, omega-components
// stationary to first order, connection anticommuting with J. In this
// gauge Gamma^A_BC = (1/2) J^A_D D_B J^D_C holds exactly at u0.
FrameField darboux_frame_field(const AmbientStructure& amb, const Vec<double>& u0);

std::map<std::string, double> darboux_report(const AmbientStructure& amb, const Vec<double>& u0);

std::map<std::string, double> appendix2_report(const AmbientStructure& amb, const Vec<double>& u0);

}  // namespace akv
