#include "akv/frames.hpp"

namespace akv {

namespace {

double resid_identity(const Mat<C0>& m) {
  Mat<C0> d = m;
  for (int i = 0; i < d.rows; ++i) d(i, i) -= C0(1.0);
  return max_abs(d);
}

}  // namespace

FrameReport verify_frame_identities(const AmbientStructure& amb, const SurfaceStructure& surf,
                                    const FrameBundle<double>& fb, const Vec<double>& u) {
  FrameReport rep;
  const int n = amb.dim();
  const int h = n / 2;
  const Mat<double> g = amb.g(u);
  const Mat<double> J = amb.J(u);
  const C0 I(0.0, 1.0);

  const Mat<double>& E = fb.real.E;
  const Mat<double>& Ei = fb.real.Ei;

  // RA1: both duality orders
  rep["RA1"] = std::max(resid_identity(complexify(Ei * E)), resid_identity(complexify(E * Ei)));

  // RA2: coframe/frame round trip on the coordinate basis
  {
    double r = 0;
    for (int k = 0; k < n; ++k) {
      Vec<double> v(n);
      v[k] = 1.0;
      Vec<double> w = E * (Ei * v);
      for (int i = 0; i < n; ++i) r = std::max(r, std::abs(w[i] - v[i]));
    }
    rep["RA2"] = r;
  }

  // RA3, orthonormality form: g(th_A, th_B) = delta_AB
  rep["RA3a"] = resid_identity(complexify(E.transposed() * g * E));
  // RA3, metric reconstruction form: sum_A E^A_i E^A_j = g_ij
  rep["RA3b"] = max_abs(Ei.transposed() * Ei - g);

  const Mat<C0>& Eh = fb.cplx.Eh;
  const Mat<C0>& Ehi = fb.cplx.Ehi;
  Mat<C0> Ehs = conj(Eh);
  Mat<C0> Ehis = conj(Ehi);

  rep["JA1"] = std::max(resid_identity(Ehi * Eh), resid_identity(Ehis * Ehs));
  rep["JA2"] = std::max(max_abs(Ehi * Ehs), max_abs(Ehis * Eh));
  rep["JA3"] = resid_identity(Eh * Ehi + Ehs * Ehis);
  // JA4/JA5: coframe rows against the frame columns through the real frame
  {
    // theta^a(du^i) consistency: rows of Ehi applied to columns of Eh and Ehs
    Mat<C0> W(n, n), Wi(n, n);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < h; ++a) {
        W(i, a) = Eh(i, a);
        W(i, h + a) = Ehs(i, a);
        Wi(a, i) = Ehi(a, i);
        Wi(h + a, i) = Ehis(a, i);
      }
    rep["JA4"] = resid_identity(Wi * W);
    rep["JA5"] = resid_identity(W * Wi);
  }

  const Mat<C0>& Ez = fb.surf.Ez;
  const Mat<C0>& Ezi = fb.surf.Ezi;
  Mat<C0> Ezs = conj(Ez), Ezis = conj(Ezi);
  rep["CH1"] = std::max(resid_identity(Ezi * Ez), resid_identity(Ezis * Ezs));
  rep["CH2"] = std::max(max_abs(Ezi * Ezs), max_abs(Ezis * Ez));
  rep["CH3"] = resid_identity(Ez * Ezi + Ezs * Ezis);
  {
    Mat<C0> W(2, 2), Wi(2, 2);
    W(0, 0) = Ez(0, 0); W(1, 0) = Ez(1, 0);
    W(0, 1) = Ezs(0, 0); W(1, 1) = Ezs(1, 0);
    Wi(0, 0) = Ezi(0, 0); Wi(0, 1) = Ezi(0, 1);
    Wi(1, 0) = Ezis(0, 0); Wi(1, 1) = Ezis(0, 1);
    rep["CH4"] = resid_identity(Wi * W);
    rep["CH5"] = resid_identity(W * Wi);
  }

  const Mat<C0>& Eca = fb.comb.Eca;
  const Mat<C0>& Ecai = fb.comb.Ecai;
  Mat<C0> Ecas = conj(Eca), Ecais = conj(Ecai);
  rep["CBA1"] = std::max(resid_identity(Ecai * Eca), resid_identity(Ecais * Ecas));
  rep["CBA2"] = std::max(max_abs(Ecai * Ecas), max_abs(Ecais * Eca));
  rep["CBA3"] = resid_identity(Eca * Ecai + Ecas * Ecais);

  // Eigenvector relations
  Mat<C0> Jc = complexify(J);
  {
    Mat<C0> r1 = Jc * Eh - Eh * Mat<C0>::identity(h) * I;
    rep["EVJ"] = max_abs(r1);
    Mat<C0> r2 = Ehi * Jc - (Ehi * I);
    rep["EVJD"] = max_abs(r2);
    Mat<C0> eps = complexify(surf.eps);
    rep["EVE"] = max_abs(eps * Ez - Ez * I);
    rep["EVED"] = max_abs(Ezi * eps - (Ezi * I));
  }
  return rep;
}

}  // namespace akv
