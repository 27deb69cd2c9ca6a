#include "akv/connection.hpp"

namespace akv {

namespace {

// theta_E(M-field) for a matrix-valued field of u, via one dual layer.
template <class F>
std::vector<Mat<double>> frame_derivatives_of(F&& field_fn, const RealFrame<double>& f,
                                              const Vec<double>& u) {
  const int n = u.n;
  std::vector<Mat<double>> partials;
  partials.reserve(n);
  for (int d = 0; d < n; ++d) {
    Mat<D1> md = field_fn(seed_direction(u, d));
    Mat<double> m(md.rows, md.cols);
    for (int i = 0; i < md.rows; ++i)
      for (int j = 0; j < md.cols; ++j) m(i, j) = md(i, j).der;
    partials.push_back(std::move(m));
  }
  std::vector<Mat<double>> out;
  out.reserve(n);
  for (int E = 0; E < n; ++E) {
    Mat<double> m(partials[0].rows, partials[0].cols);
    for (int j = 0; j < n; ++j) m = m + partials[j] * f.E(j, E);
    out.push_back(std::move(m));
  }
  return out;
}

Mat<double> gamma_matrix(const Ten3<double>& Ganh, int B) {
  Mat<double> m(Ganh.n, Ganh.n);
  for (int A = 0; A < Ganh.n; ++A)
    for (int C = 0; C < Ganh.n; ++C) m(A, C) = Ganh(A, B, C);
  return m;
}

// Constant rotation bringing an antisymmetric orthogonal form matrix K to
// the standard pairing omega(e_a, e_{h+a}) = 1.
Mat<double> standardizing_rotation(const Mat<double>& K) {
  const int n = K.rows, h = n / 2;
  std::vector<Vec<double>> basis;  // v_1..v_h then w_1..w_h
  std::vector<Vec<double>> vcols, wcols;
  auto orth_residual = [&](Vec<double> x) {
    for (auto& b : basis) {
      double p = 0;
      for (int i = 0; i < n; ++i) p += b[i] * x[i];
      for (int i = 0; i < n; ++i) x[i] -= p * b[i];
    }
    return x;
  };
  for (int step = 0; step < h; ++step) {
    // pick the coordinate direction with the largest residual
    Vec<double> v;
    double best = -1;
    for (int c = 0; c < n; ++c) {
      Vec<double> cand(n);
      cand[c] = 1;
      cand = orth_residual(cand);
      double norm = 0;
      for (int i = 0; i < n; ++i) norm += cand[i] * cand[i];
      if (norm > best) {
        best = norm;
        v = cand;
      }
    }
    double norm = std::sqrt(best);
    for (int i = 0; i < n; ++i) v[i] /= norm;
    Vec<double> w(n);
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int j = 0; j < n; ++j) s -= K(i, j) * v[j];
      w[i] = s;
    }
    basis.push_back(v);
    basis.push_back(w);
    vcols.push_back(v);
    wcols.push_back(w);
  }
  Mat<double> Q(n, n);
  for (int a = 0; a < h; ++a)
    for (int i = 0; i < n; ++i) {
      Q(i, a) = vcols[a][i];
      Q(i, h + a) = wcols[a][i];
    }
  return Q;
}

Mat<double> standard_omega_block(int n) {
  const int h = n / 2;
  Mat<double> w(n, n);
  for (int a = 0; a < h; ++a) {
    w(a, h + a) = 1;
    w(h + a, a) = -1;
  }
  return w;
}

struct CorrectionResult {
  FrameField field;
  Mat<double> Jf;  // frame J at u0 in the corrected frame
};

enum class CorrectionKind { kSynchronous, kDarboux };

CorrectionResult corrected_frame(const AmbientStructure& amb, const Vec<double>& u0,
                                 CorrectionKind kind) {
  const int n = amb.dim();
  FrameField gs = FrameField::gram_schmidt();
  RealFrame<double> f0 = gs.eval(amb, u0);
  Ten3<double> Ganh = anholonomic_connection(amb, gs, u0);

  std::array<Mat<double>, kMaxDim> Lam{};
  if (kind == CorrectionKind::kSynchronous) {
    for (int E = 0; E < n; ++E) Lam[E] = gamma_matrix(Ganh, E) * (-1.0);
  } else {
    Mat<double> Jf = frame_matrix_ud(amb.J(u0), f0);
    auto om_field = [&](const auto& u) {
      auto fr = gs.eval(amb, u);
      return fr.E.transposed() * amb.omega(u) * fr.E;
    };
    std::vector<Mat<double>> thOm = frame_derivatives_of(om_field, f0, u0);
    for (int E = 0; E < n; ++E) {
      Mat<double> La = (Jf * thOm[E]) * (-0.5);
      Mat<double> Gp = gamma_matrix(Ganh, E) + La;
      // remove the J-commuting part so the connection anticommutes with J
      Mat<double> comm = (Gp - Jf * Gp * Jf) * 0.5;
      Lam[E] = La - comm;
    }
  }
  std::array<Mat<double>, kMaxDim> Mj{};
  for (int j = 0; j < n; ++j) {
    Mat<double> m(n, n);
    for (int E = 0; E < n; ++E) m = m + Lam[E] * f0.Ei(E, j);
    Mj[j] = m;
  }
  FrameField out = FrameField::corrected(u0, Mj);
  if (kind == CorrectionKind::kDarboux) {
    // align omega at u0 with the standard pairing by a constant rotation
    RealFrame<double> f1 = out.eval(amb, u0);
    Mat<double> K = f1.E.transposed() * amb.omega(u0) * f1.E;
    out.rot = standardizing_rotation(K);
  }
  RealFrame<double> fc = out.eval(amb, u0);
  return {out, frame_matrix_ud(amb.J(u0), fc)};
}

}  // namespace

CartanCheck cartan_structure_functions(const AmbientStructure& amb, const FrameField& field,
                                       const Vec<double>& u, double abort_tol) {
  Ten3<double> from_gamma = cartan_from_gamma(anholonomic_connection(amb, field, u));
  Ten3<double> from_brackets = cartan_from_brackets(amb, field, u);
  double resid = 0;
  for (size_t i = 0; i < from_gamma.a.size(); ++i)
    resid = std::max(resid, std::abs(from_gamma.a[i] - from_brackets.a[i]));
  if (resid > abort_tol)
    throw Error("cartan structure functions: antisymmetrized-connection and Lie-bracket "
                "evaluations disagree by " + std::to_string(resid));
  return {std::move(from_gamma), resid};
}

double ricci_identity_residual(const AmbientStructure& amb, const Vec<double>& u) {
  const int n = amb.dim();
  Ten4<double> DDJ = ddj_hol(amb, u);
  Ten4<double> R = riemann_hol(amb, u);
  Mat<double> J = amb.J(u);
  double resid = 0;
  for (int q = 0; q < n; ++q)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double lhs = DDJ(q, k, i, j) - DDJ(k, q, i, j);
          double rhs = 0;
          for (int r = 0; r < n; ++r) rhs += R(i, r, q, k) * J(r, j) - R(r, j, q, k) * J(i, r);
          resid = std::max(resid, std::abs(lhs - rhs));
        }
  return resid;
}

std::vector<double> covariant_derivative_frame(const AmbientStructure& amb,
                                               const FrameField& field,
                                               const std::string& label, const Vec<double>& u) {
  const int n = amb.dim();
  const TensorFieldSpec& spec = amb.m->field(label);
  if (spec.total_rank() > 2) throw Error("covariant_derivative_frame: rank > 2 unsupported");
  RealFrame<double> f = field.eval(amb, u);
  Ten3<double> G = christoffel(amb, u);

  // partials of the components
  std::vector<std::vector<double>> dT(n);
  for (int d = 0; d < n; ++d) {
    Vec<D1> x = seed_direction(u, d);
    auto vals = amb.m->eval(label, x);
    dT[d].resize(vals.size());
    for (size_t c = 0; c < vals.size(); ++c) dT[d][c] = vals[c].der;
  }
  std::vector<double> T = amb.m->eval(label, u);

  if (spec.total_rank() == 0) {
    std::vector<double> out(n);
    for (int A = 0; A < n; ++A) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += f.E(j, A) * dT[j][0];
      out[A] = s;
    }
    return out;
  }

  auto idx2 = [n](int i, int j) { return size_t(i) * n + j; };
  // holonomic covariant derivative per valence
  Ten3<double> DT(n);  // DT(a, i, j)
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = dT[a][idx2(i, j)];
        if (spec.rank_up == 1 && spec.rank_down == 1) {
          for (int l = 0; l < n; ++l)
            s += G(i, a, l) * T[idx2(l, j)] - G(l, a, j) * T[idx2(i, l)];
        } else if (spec.rank_up == 0) {
          for (int l = 0; l < n; ++l)
            s += -G(l, a, i) * T[idx2(l, j)] - G(l, a, j) * T[idx2(i, l)];
        } else {  // (2,0)
          for (int l = 0; l < n; ++l)
            s += G(i, a, l) * T[idx2(l, j)] + G(j, a, l) * T[idx2(i, l)];
        }
        DT(a, i, j) = s;
      }
  // frame components
  std::vector<double> out(size_t(n) * n * n);
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      for (int C = 0; C < n; ++C) {
        double s = 0;
        for (int a = 0; a < n; ++a)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
              double wi = spec.rank_up >= 1 ? f.Ei(B, i) : f.E(i, B);
              double wj = spec.rank_up == 2 ? f.Ei(C, j) : f.E(j, C);
              s += f.E(a, A) * wi * wj * DT(a, i, j);
            }
        out[(size_t(A) * n + B) * n + C] = s;
      }
  return out;
}

FrameField synchronous_frame_field(const AmbientStructure& amb, const Vec<double>& u0) {
  return corrected_frame(amb, u0, CorrectionKind::kSynchronous).field;
}

FrameField darboux_frame_field(const AmbientStructure& amb, const Vec<double>& u0) {
  return corrected_frame(amb, u0, CorrectionKind::kDarboux).field;
}

std::map<std::string, double> darboux_report(const AmbientStructure& amb, const Vec<double>& u0) {
  const int n = amb.dim();
  std::map<std::string, double> rep;
  FrameField df = darboux_frame_field(amb, u0);
  RealFrame<double> f = df.eval(amb, u0);

  Mat<double> omf = f.E.transposed() * amb.omega(u0) * f.E;
  rep["DARB-OMEGA"] = max_abs(omf - standard_omega_block(n));
  auto om_field = [&](const auto& u) {
    auto fr = df.eval(amb, u);
    return fr.E.transposed() * amb.omega(u) * fr.E;
  };
  auto thOm = frame_derivatives_of(om_field, f, u0);
  double dom = 0;
  for (auto& m : thOm) dom = std::max(dom, max_abs(m));
  rep["DARB-DOMEGA"] = dom;
  rep["DARB-ORTH"] = max_abs(f.E.transposed() * amb.g(u0) * f.E - Mat<double>::identity(n));

  Mat<double> Jf = frame_matrix_ud(amb.J(u0), f);
  Ten3<double> Ganh = anholonomic_connection(amb, df, u0);
  double acomm = 0;
  for (int B = 0; B < n; ++B) {
    Mat<double> Gb = gamma_matrix(Ganh, B);
    acomm = std::max(acomm, max_abs(Jf * Gb + Gb * Jf));
  }
  rep["DARB-ACOMM"] = acomm;

  Ten3<double> DJf = dj_to_frame(dj_hol(amb, u0), f);
  double e3 = 0;
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      for (int C = 0; C < n; ++C) {
        double rhs = 0;
        for (int D = 0; D < n; ++D) rhs += 0.5 * Jf(A, D) * DJf(B, D, C);
        e3 = std::max(e3, std::abs(Ganh(A, B, C) - rhs));
      }
  rep["E3"] = e3;

  Ten3<double> C = cartan_from_gamma(Ganh);
  double e4 = 0, e4h = 0;
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      for (int Cc = 0; Cc < n; ++Cc) {
        double rhs = 0;
        for (int D = 0; D < n; ++D)
          rhs += 0.5 * Jf(A, D) * (DJf(B, D, Cc) - DJf(Cc, D, B));
        e4 = std::max(e4, std::abs(C(A, B, Cc) - rhs));
        e4h = std::max(e4h, std::abs(C(A, B, Cc) - 0.5 * rhs));
      }
  rep["E4"] = e4;
  rep["E4-HALF"] = e4h;  // half-weight bracket reading, reported for comparison
  return rep;
}

std::map<std::string, double> appendix2_report(const AmbientStructure& amb,
                                               const Vec<double>& u0) {
  const int n = amb.dim();
  std::map<std::string, double> rep;
  FrameField df = darboux_frame_field(amb, u0);
  RealFrame<double> f = df.eval(amb, u0);

  Mat<double> J = amb.J(u0);
  Ten3<double> DJ = dj_hol(amb, u0);
  Ten3<double> DJf = dj_to_frame(DJ, f);
  Mat<double> Jf = frame_matrix_ud(J, f);

  // A.1: D_k J^k_i = 0 (holonomic trace, tensorial)
  double a1 = 0;
  for (int i = 0; i < n; ++i) {
    double s = 0;
    for (int k = 0; k < n; ++k) s += DJ(k, k, i);
    a1 = std::max(a1, std::abs(s));
  }
  rep["A1"] = a1;

  // A.2 quasi-Kahler: D_k J^j_i + J^r_k J^s_i D_r J^j_s = 0
  double a2 = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        double s = DJ(k, j, i);
        for (int r = 0; r < n; ++r)
          for (int ss = 0; ss < n; ++ss) s += J(r, k) * J(ss, i) * DJ(r, j, ss);
        a2 = std::max(a2, std::abs(s));
      }
  rep["A2"] = a2;

  // A.3: J anticommutes with D_k J
  double a3 = 0;
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m)
      for (int l = 0; l < n; ++l) {
        double s = 0;
        for (int nn = 0; nn < n; ++nn) s += J(m, nn) * DJ(k, nn, l) + DJ(k, m, nn) * J(nn, l);
        a3 = std::max(a3, std::abs(s));
      }
  rep["A3"] = a3;

  // structure-function tensor in the Darboux frame
  Ten3<double> Cf = to_frame_udd(c_tensor_hol(amb, u0), f);
  rep["DJNORM"] = max_abs3(DJf);

  // A.4: complete antisymmetry (pair antisymmetry is manifest; the
  // transpositions below generate the rest)
  double a4 = 0;
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a4 = std::max(a4, std::abs(Cf(m, i, j) + Cf(i, m, j)));
        a4 = std::max(a4, std::abs(Cf(m, i, j) + Cf(j, i, m)));
      }
  rep["A4"] = a4;

  // A.5 endpoints. First: C from the quasi-Kahler substitution,
  // C^m_kl = (1/2) sum_r [J^r_k (D_r J)^l_m - J^r_l (D_r J)^k_m].
  double a5a = 0;
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        double cand = 0;
        for (int r = 0; r < n; ++r)
          cand += 0.5 * (Jf(r, k) * DJf(r, l, m) - Jf(r, l) * DJf(r, k, m));
        a5a = std::max(a5a, std::abs(Cf(m, k, l) - cand));
      }
  rep["A5a"] = a5a;
  // Last: C^m_kl = -(1/2) sum_n J^n_m (D_n J)^k_l.
  double a5b = 0;
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        double cand = 0;
        for (int nn = 0; nn < n; ++nn) cand -= 0.5 * Jf(nn, m) * DJf(nn, k, l);
        a5b = std::max(a5b, std::abs(Cf(m, k, l) - cand));
      }
  rep["A5b"] = a5b;

  // A.6-A.10: complete antisymmetry of D_a C_mij (frame components of the
  // honest covariant derivative of the structure-function tensor).
  Ten4<double> DCf = dc_to_frame(dc_tensor_hol(amb, u0), f);
  double a610 = 0;
  for (int a = 0; a < n; ++a)
    for (int m = 0; m < n; ++m)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          a610 = std::max(a610, std::abs(DCf(a, m, i, j) + DCf(m, a, i, j)));
          a610 = std::max(a610, std::abs(DCf(a, m, i, j) + DCf(i, m, a, j)));
          a610 = std::max(a610, std::abs(DCf(a, m, i, j) + DCf(a, m, j, i)));
        }
  rep["A6A10"] = a610;

  // A.11/A.12: frame derivative of the structure-function field against
  // the covariant derivative, in the Darboux frame.
  {
    std::vector<Ten3<double>> dC(n, Ten3<double>(n));
    for (int d = 0; d < n; ++d) {
      Ten3<D1> Cd = cartan_from_gamma(
          anholonomic_connection(amb, df, seed_direction(Vec<double>(u0), d)));
      for (size_t idx = 0; idx < Cd.a.size(); ++idx) dC[d].a[idx] = Cd.a[idx].der;
    }
    Ten3<double> Ganh = anholonomic_connection(amb, df, u0);
    Ten3<double> Ccsf = cartan_from_gamma(Ganh);
    double a11 = 0;
    for (int A = 0; A < n; ++A)
      for (int D = 0; D < n; ++D)
        for (int B = 0; B < n; ++B)
          for (int Cc = 0; Cc < n; ++Cc) {
            double th = 0;
            for (int j = 0; j < n; ++j) th += f.E(j, A) * dC[j](D, B, Cc);
            double corr = 0;
            for (int e = 0; e < n; ++e)
              corr += Ganh(D, A, e) * Ccsf(e, B, Cc) - Ganh(e, A, B) * Ccsf(D, e, Cc) -
                      Ganh(e, A, Cc) * Ccsf(D, B, e);
            a11 = std::max(a11, std::abs(corr));  // D_A C - theta_A C = corr
          }
    rep["A11"] = a11;
    rep["A12"] = a11;
  }

  // A.13: D_A C^D_BC = (D_A J^D_F)(D_B J^F_C) + J^D_F R^F_{K A B} J^K_C
  //                   + J^D_F Ric_{CB} J^F_A
  {
    Ten4<double> Rf = riemann_to_frame(riemann_hol(amb, u0), f);
    Mat<double> Ricf(n, n);
    for (int b = 0; b < n; ++b)
      for (int l = 0; l < n; ++l) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += Rf(i, b, i, l);
        Ricf(b, l) = s;
      }
    double a13 = 0;
    for (int A = 0; A < n; ++A)
      for (int D = 0; D < n; ++D)
        for (int B = 0; B < n; ++B)
          for (int Cc = 0; Cc < n; ++Cc) {
            double rhs = 0;
            for (int F = 0; F < n; ++F) {
              rhs += DJf(A, D, F) * DJf(B, F, Cc);
              rhs += Jf(D, F) * Ricf(Cc, B) * Jf(F, A);
              for (int K = 0; K < n; ++K) rhs += Jf(D, F) * Rf(F, K, A, B) * Jf(K, Cc);
            }
            a13 = std::max(a13, std::abs(DCf(A, D, B, Cc) - rhs));
          }
    rep["A13"] = a13;
  }
  return rep;
}

}  // namespace akv
