#include "akv/almost_kahler.hpp"

namespace akv {

StructureResiduals structure_residuals(const AmbientStructure& a, const Vec<double>& u) {
  const int n = a.dim();
  Mat<double> g = a.g(u), om = a.omega(u), J = a.J(u);
  StructureResiduals r{};

  Mat<double> JJ = J * J;
  for (int i = 0; i < n; ++i) JJ(i, i) += 1.0;
  r.j_squared = max_abs(JJ);
  r.g_symmetric = max_abs(g - g.transposed());
  r.omega_antisym = max_abs(om + om.transposed());

  Mat<double> compat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = om(i, j);
      for (int k = 0; k < n; ++k) s -= J(k, i) * g(k, j);
      compat(i, j) = s;
    }
  r.compatible = max_abs(compat);

  // d omega = 0 componentwise: cyclic sum of partials
  std::vector<Mat<double>> dom(n, Mat<double>(n, n));
  for (int d = 0; d < n; ++d) {
    Vec<D1> x(n);
    for (int i = 0; i < n; ++i) x[i] = D1(u[i], i == d ? 1.0 : 0.0);
    Mat<D1> omd = a.m->eval_mat("omega", x);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dom[d](i, j) = omd(i, j).der;
  }
  double dw = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        dw = std::max(dw, std::abs(dom[i](j, k) + dom[j](k, i) + dom[k](i, j)));
  r.d_omega = dw;

  Vec<double> w;
  Mat<double> v;
  jacobi_eigen(g, w, v);
  r.g_min_eigen = w[0];
  return r;
}

CompatibleTriple build_compatible_triple(const Mat<double>& g_aux, const Mat<double>& omega,
                                         double det_tol, double eigen_floor) {
  const int n = g_aux.rows;
  if (std::abs(det(omega)) < det_tol) throw Error("build_compatible_triple: omega degenerate");

  // symmetric square root of g_aux
  Vec<double> w;
  Mat<double> v;
  jacobi_eigen(g_aux, w, v);
  if (w[0] <= 0) throw Error("build_compatible_triple: g_aux not positive definite");
  Mat<double> L(n, n), Li(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0, si = 0;
      for (int k = 0; k < n; ++k) {
        s += v(i, k) * std::sqrt(w[k]) * v(j, k);
        si += v(i, k) / std::sqrt(w[k]) * v(j, k);
      }
      L(i, j) = s;
      Li(i, j) = si;
    }

  // antisymmetric gauge: Tm = L^-1 omega L^-1, S = -Tm^2 symmetric positive
  Mat<double> Tm = Li * omega * Li;
  Mat<double> S = (Tm * Tm) * (-1.0);
  Vec<double> sw;
  Mat<double> sv;
  jacobi_eigen(S, sw, sv);
  if (sw[0] < eigen_floor)
    throw Error("build_compatible_triple: degenerate omega/g pairing (eigenvalue below floor)");
  Mat<double> Sinvhalf(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += sv(i, k) / std::sqrt(sw[k]) * sv(j, k);
      Sinvhalf(i, j) = s;
    }
  // polar factor of g^-1 omega pairs as omega(X,Y) = g(X,JY); the sign flip
  // converts to the omega_ij = J^k_i g_kj convention used everywhere here
  Mat<double> Jgauge = (Tm * Sinvhalf) * (-1.0);
  CompatibleTriple out;
  out.J = Li * Jgauge * L;
  // g_c(X,Y) = omega(X, JY)
  out.g_compat = omega * out.J;
  return out;
}

}  // namespace akv
