#pragma once

// Ambient almost-Kahler structure: evaluation of (g, omega, J) triples,
// construction of a compatible J from (g_aux, omega) by polar
// decomposition, the Nijenhuis integrability obstruction, and the
// pointwise structure invariants.

#include <string>

#include "akv/linalg.hpp"
#include "akv/manifold.hpp"

namespace akv {

struct AmbientStructure {
  const ChartedManifold* m = nullptr;

  explicit AmbientStructure(const ChartedManifold& man) : m(&man) {
    for (const char* f : {"g", "omega", "J"})
      if (!m->has_field(f)) throw Error(std::string("ambient structure needs field '") + f + "'");
  }

  int dim() const { return m->dim; }

  template <class T> Mat<T> g(const Vec<T>& u) const { return m->eval_mat("g", u); }
  template <class T> Mat<T> omega(const Vec<T>& u) const { return m->eval_mat("omega", u); }
  template <class T> Mat<T> J(const Vec<T>& u) const { return m->eval_mat("J", u); }
};

// Surface (Sigma) complex structure; the charts here use the standard
// constant epsilon with eps d_1 = d_2.
struct SurfaceStructure {
  Mat<double> eps = standard();

  static Mat<double> standard() {
    Mat<double> e(2, 2);
    e(0, 1) = -1;
    e(1, 0) = 1;
    return e;
  }
};

// Pointwise residuals of the almost-Kahler structure invariants.
struct StructureResiduals {
  double j_squared;     // max |J^2 + 1|
  double g_symmetric;   // max |g - g^T|
  double omega_antisym; // max |omega + omega^T|
  double compatible;    // max |omega_ij - J^k_i g_kj|
  double d_omega;       // max |cyclic sum of d_i omega_jk|
  double g_min_eigen;   // smallest eigenvalue of g
};

StructureResiduals structure_residuals(const AmbientStructure& a, const Vec<double>& u);

// J = A (-A^2)^{-1/2} with A = g_aux^{-1} omega, computed through the
// g_aux-orthonormal gauge where A is antisymmetric. Returns J together
// with the compatible metric g_c(X,Y) = omega(X, JY).
struct CompatibleTriple {
  Mat<double> J;
  Mat<double> g_compat;
};
CompatibleTriple build_compatible_triple(const Mat<double>& g_aux, const Mat<double>& omega,
                                         double det_tol = 1e-12, double eigen_floor = 1e-12);

// Nijenhuis tensor N^i_jk of the registered field "J"; evaluable over any
// scalar depth (the coordinate-derivative formula is tensorial).
template <class T>
std::vector<T> nijenhuis_tensor(const ChartedManifold& m, const Vec<T>& u) {
  const int n = m.dim;
  // J and its first partials via one dual layer
  Vec<Dual<T>> x(n);
  std::vector<Mat<T>> dJ(n, Mat<T>(n, n));
  for (int d = 0; d < n; ++d) {
    for (int i = 0; i < n; ++i) x[i] = Dual<T>(u[i], T(i == d ? 1 : 0));
    Mat<Dual<T>> Jd = m.eval_mat("J", x);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dJ[d](i, j) = Jd(i, j).der;
  }
  Mat<T> J = m.eval_mat("J", u);
  std::vector<T> N(size_t(n) * n * n, T(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        T s{};
        for (int l = 0; l < n; ++l)
          s += J(l, j) * dJ[l](i, k) - J(l, k) * dJ[l](i, j)
             - J(i, l) * dJ[j](l, k) + J(i, l) * dJ[k](l, j);
        N[(size_t(i) * n + j) * n + k] = s;
      }
  return N;
}

inline double nijenhuis_max_abs(const ChartedManifold& m, const Vec<double>& u) {
  auto N = nijenhuis_tensor(m, u);
  double r = 0;
  for (double v : N) r = std::max(r, std::abs(v));
  return r;
}

}  // namespace akv
