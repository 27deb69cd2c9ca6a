#pragma once

// Covariant phase space of first-order embeddings Sigma -> M: momentum
// observables, the vertical multisymplectic forms, Hamiltonian fields and
// the current algebras, plus the pseudoholomorphic momentum blocks, the
// projection onto the constrained subbundle, and the graded extension's
// shared geometry.
//
// Charts. On the unconstrained space the engine works in the frame chart
// (x, u, p_A^alpha) with p_A = E_A^i p_i; on the constrained subbundle it
// works in the adapted chart (x, u, p_a^z, p_{a*}^{z*}). Both are the
// charts in which the closed-form Hamiltonian fields are stated.

#include "akv/exterior.hpp"

namespace akv {

// ---- geometry cache ---------------------------------------------------------

template <class S>
struct PhaseGeom {
  int m = 0;
  FrameBundle<S> fb;
  Ten3<S> Ganh;       // Gamma^A_{BC}, B = direction
  Ten3<S> C;          // Cartan structure functions
  Ten3<Cx<S>> Gmix;   // Gmix(a, C, A): holo-coframe x real-direction x real-arg
  bool has_conn = false;
};

template <class S>
PhaseGeom<S> phase_geom(const AmbientStructure& amb, const SurfaceStructure& surf,
                        const FrameField& field, const Vec<S>& u, bool need_conn) {
  PhaseGeom<S> g;
  g.m = amb.dim();
  g.fb = build_frames(amb, surf, field, u);
  if (need_conn) {
    g.has_conn = true;
    g.Ganh = anholonomic_connection(amb, field, u);
    g.C = cartan_from_gamma(g.Ganh);
    // mixed connection coefficients E^a_i [ th_C(E^i_A) + E^j_C E^k_A G^i_jk ]
    const int n = g.m;
    std::vector<Mat<S>> dE = frame_partials(amb, field, u);
    Ten3<S> G = christoffel(amb, u);
    g.Gmix = Ten3<Cx<S>>(n);
    for (int a = 0; a < n / 2; ++a)
      for (int Cd = 0; Cd < n; ++Cd)
        for (int A = 0; A < n; ++A) {
          Cx<S> s{};
          for (int i = 0; i < n; ++i) {
            S th{};
            for (int j = 0; j < n; ++j) th += g.fb.real.E(j, Cd) * dE[j](i, A);
            S gcorr{};
            for (int j = 0; j < n; ++j)
              for (int k = 0; k < n; ++k)
                gcorr += g.fb.real.E(j, Cd) * g.fb.real.E(k, A) * G(i, j, k);
            s += g.fb.cplx.Ehi(a, i) * Cx<S>(th + gcorr);
          }
          g.Gmix(a, Cd, A) = s;
        }
  }
  return g;
}

// theta-hat^A = E^A_i du^i as a form element
template <class S>
Element<S> theta_up(const PhaseGeom<S>& g, int A) {
  Element<S> e;
  for (int i = 0; i < g.m; ++i)
    e += Element<S>::generator(GK::FDu, i, Cx<S>(g.fb.real.Ei(A, i)));
  return e;
}
// theta-hat_A = E^i_A d/du^i as a vector element
template <class S>
Element<S> theta_down(const PhaseGeom<S>& g, int A) {
  Element<S> e;
  for (int i = 0; i < g.m; ++i)
    e += Element<S>::generator(GK::VDu, i, Cx<S>(g.fb.real.E(i, A)));
  return e;
}
// holomorphic coframe / frame on M
template <class S>
Element<S> theta_hol_up(const PhaseGeom<S>& g, int a) {
  Element<S> e;
  for (int i = 0; i < g.m; ++i) e += Element<S>::generator(GK::FDu, i, g.fb.cplx.Ehi(a, i));
  return e;
}
template <class S>
Element<S> theta_hol_up_conj(const PhaseGeom<S>& g, int a) {
  Element<S> e;
  for (int i = 0; i < g.m; ++i)
    e += Element<S>::generator(GK::FDu, i, conj(g.fb.cplx.Ehi(a, i)));
  return e;
}

// horizontal legs dx_z := E^alpha_z dx_alpha and its conjugate
template <class S>
Element<S> dx_z(const PhaseGeom<S>& g, bool starred) {
  Element<S> e;
  for (int al = 0; al < 2; ++al) {
    Cx<S> w = g.fb.surf.Ez(al, 0);
    if (starred) w = conj(w);
    e += dx_lower<S>(al) * w;
  }
  return e;
}

// d/dz = E^alpha_z d/dx^alpha and conjugate, as vector elements
template <class S>
Element<S> ddz(const PhaseGeom<S>& g, bool starred) {
  Element<S> e;
  for (int al = 0; al < 2; ++al) {
    Cx<S> w = g.fb.surf.Ez(al, 0);
    if (starred) w = conj(w);
    e += Element<S>::generator(GK::VDx, al, w);
  }
  return e;
}

// partials of the combination vielbeins: d[j](a, A) = d_j (E^a_i E^i_A)
template <class S>
struct CombPartials {
  std::vector<Mat<Cx<S>>> d;
};

template <class S>
CombPartials<S> comb_partials(const AmbientStructure& amb, const SurfaceStructure& surf,
                              const FrameField& field, const Vec<S>& u) {
  const int n = amb.dim(), h = n / 2;
  CombPartials<S> out;
  for (int j = 0; j < n; ++j) {
    FrameBundle<Dual<S>> fb = build_frames(amb, surf, field, seed_direction(u, j));
    Mat<Cx<S>> m(h, n);
    for (int a = 0; a < h; ++a)
      for (int A = 0; A < n; ++A)
        m(a, A) = Cx<S>(fb.comb.Ecai(a, A).re.der, fb.comb.Ecai(a, A).im.der);
    out.d.push_back(std::move(m));
  }
  return out;
}

// Closed-form Hamiltonian fields on the constrained subbundle.
//
// X[u^i]   = 2i E^i_a d/dz* ^ d/dq_a  -  2i E^i_{a*} d/dz ^ d/dqs_a
// X[J_D|+] = theta_D - q_b theta_f(E^b_D) d/dq_f - qs_b theta_{f*}(E^{b*}_D) d/dqs_f
//
// The scalar normalizations and the momentum legs are forced by the
// structural equation against the block form of the induced
// multisymplectic form; on integrable targets they solve it exactly.
template <class S>
Element<S> ham_u_plus(const PhaseGeom<S>& g, int i) {
  const int h = g.m / 2;
  const Cx<S> two_i(S(0), S(2));
  Element<S> X;
  for (int a = 0; a < h; ++a) {
    X += wedge(ddz(g, true), Element<S>::generator(GK::VDq, a)) * (two_i * g.fb.cplx.Eh(i, a));
    X += wedge(ddz(g, false), Element<S>::generator(GK::VDqs, a)) *
         (-two_i * conj(g.fb.cplx.Eh(i, a)));
  }
  return X;
}

template <class S>
Element<S> ham_J_plus(const PhaseGeom<S>& g, const CombPartials<S>& cp, const GPoint<S>& pt,
                      int D) {
  const int m = g.m, h = m / 2;
  Element<S> X = theta_down(g, D);
  for (int f = 0; f < h; ++f) {
    Cx<S> cq{}, cqs{};
    for (int b = 0; b < h; ++b) {
      Cx<S> th{};  // theta_f(E^b_D)
      for (int j = 0; j < m; ++j) th += g.fb.cplx.Eh(j, f) * cp.d[j](b, D);
      cq -= pt.q[b] * th;
      cqs -= pt.qs[b] * conj(th);
    }
    X += Element<S>::generator(GK::VDq, f, cq);
    X += Element<S>::generator(GK::VDqs, f, cqs);
  }
  return X;
}

// ---- momentum blocks ---------------------------------------------------------

struct MomentumBlocks {
  Vec<C0> q;      // p_a^z
  Vec<C0> qs;     // p_{a*}^{z*}
  Vec<C0> mix1;   // p_a^{z*}
  Vec<C0> mix2;   // p_{a*}^{z}
};

MomentumBlocks blocks_from_holonomic(const FrameBundle<double>& fb, const Mat<double>& p);
Mat<double> holonomic_from_blocks(const FrameBundle<double>& fb, const MomentumBlocks& b);
MomentumBlocks project_blocks(MomentumBlocks b);  // zero the mixed blocks

// pseudoholomorphicity condition eps^al_be p^be_i = J_i^j p^al_j
double phe_residual(const Mat<double>& J, const Mat<double>& eps, const Mat<double>& p);

// ---- reports -----------------------------------------------------------------

struct PhasePointSample {
  Vec<double> u;
  Mat<double> p;  // holonomic p_i^alpha
};
PhasePointSample sample_phase_point(const ChartedManifold& man, uint64_t seed, uint64_t index);

// Theorem 2.1 block: exactness of Omega^V, structural equation for the
// momentum observables, bracket algebra and antisymmetry.
std::map<std::string, double> currents_report(const AmbientStructure& amb,
                                              const SurfaceStructure& surf,
                                              const FrameField& field,
                                              const PhasePointSample& pt);

// max |{J_B, J_C}| itself (for the synchronous-frame Abelianization check)
double bracket_magnitude(const AmbientStructure& amb, const SurfaceStructure& surf,
                         const FrameField& field, const PhasePointSample& pt);

// Pseudoholomorphic constraint block: vanishing of the mixed blocks on
// phe-solutions, the nonzero witness, projector idempotence, round trips.
std::map<std::string, double> projection_report(const AmbientStructure& amb,
                                                const SurfaceStructure& surf,
                                                const FrameField& field,
                                                const PhasePointSample& pt);

// Theorem 4.1 block on the constrained subbundle: structural equations of
// the solved Hamiltonian fields (J_A|+ and u^i), the display-field
// comparison, induced bracket algebra.
std::map<std::string, double> currents_plus_report(const AmbientStructure& amb,
                                                   const SurfaceStructure& surf,
                                                   const FrameField& field,
                                                   const PhasePointSample& pt);

// gauge covariance spot check: bracket residual under a seeded random
// constant rotation of the real frame
double gauge_covariance_residual(const AmbientStructure& amb, const SurfaceStructure& surf,
                                 const PhasePointSample& pt, uint64_t seed);

// ---- linear solver over elements ----------------------------------------------

template <class S>
struct ContractionSolve {
  std::vector<Cx<S>> x;
  double residual;
};

// least-squares solve of  sum_k x_k contract(legs[k], Omega) = rhs  by
// normal equations; smooth in the inputs, so it lifts through dual scalars
template <class S>
ContractionSolve<S> solve_contraction(const std::vector<Element<S>>& legs,
                                      const Element<S>& Omega, const Element<S>& rhs) {
  const int K = int(legs.size());
  std::vector<Element<S>> cols;
  cols.reserve(K);
  for (auto& l : legs) cols.push_back(contract(l, Omega));
  // collect keys
  std::map<Key, int> keyidx;
  auto note = [&](const Element<S>& e) {
    for (auto& [k, c] : e.terms)
      if (!keyidx.count(k)) keyidx.emplace(k, int(keyidx.size()));
  };
  for (auto& c : cols) note(c);
  note(rhs);
  const int R = int(keyidx.size());
  std::vector<std::vector<Cx<S>>> A(R, std::vector<Cx<S>>(K));
  std::vector<Cx<S>> b(R);
  for (int k = 0; k < K; ++k)
    for (auto& [key, c] : cols[k].terms) A[keyidx[key]][k] = c;
  for (auto& [key, c] : rhs.terms) b[keyidx[key]] = c;
  // normal equations, dynamic Gauss with partial pivoting
  std::vector<std::vector<Cx<S>>> M(K, std::vector<Cx<S>>(K + 1));
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      Cx<S> s{};
      for (int r = 0; r < R; ++r) s += conj(A[r][i]) * A[r][j];
      M[i][j] = s;
    }
    Cx<S> s{};
    for (int r = 0; r < R; ++r) s += conj(A[r][i]) * b[r];
    M[i][K] = s;
  }
  // ridge for rank-deficient ansatz spaces: near-minimum-norm solution
  for (int i = 0; i < K; ++i) M[i][i] += Cx<S>(S(1e-12));
  for (int col = 0; col < K; ++col) {
    int piv = col;
    for (int r = col + 1; r < K; ++r)
      if (cx_abs(M[r][col]) > cx_abs(M[piv][col])) piv = r;
    std::swap(M[piv], M[col]);
    Cx<S> d = M[col][col];
    for (int j = col; j <= K; ++j) M[col][j] /= d;
    for (int r = 0; r < K; ++r) {
      if (r == col) continue;
      Cx<S> f = M[r][col];
      if (strictly_zero(f)) continue;
      for (int j = col; j <= K; ++j) M[r][j] -= f * M[col][j];
    }
  }
  ContractionSolve<S> out;
  out.x.resize(K);
  for (int k = 0; k < K; ++k) out.x[k] = M[k][K];
  double resid = 0;
  for (int r = 0; r < R; ++r) {
    Cx<S> s = -b[r];
    for (int k = 0; k < K; ++k) s += A[r][k] * out.x[k];
    resid = std::max(resid, cx_abs(s));
  }
  out.residual = resid;
  return out;
}

// drop every term whose generator word touches the given kind (used to
// restrict structural systems to the block a reduced ansatz can reach)
template <class S>
Element<S> drop_kind(const Element<S>& e, GK kind) {
  Element<S> out;
  for (auto& [k, c] : e.terms) {
    bool has = false;
    for (int i = 0; i < k.len; ++i)
      if (gen_kind(k.gen(i)) == kind) { has = true; break; }
    if (!has) out.add_term(k, c);
  }
  return out;
}

}  // namespace akv
