#include <doctest.h>

#include "akv/linalg.hpp"

using namespace akv;

TEST_CASE("inverse and determinant") {
  Mat<double> m(3, 3);
  m(0, 0) = 2; m(0, 1) = 1; m(0, 2) = 0;
  m(1, 0) = 1; m(1, 1) = 3; m(1, 2) = 1;
  m(2, 0) = 0; m(2, 1) = 1; m(2, 2) = 2;
  Mat<double> mi = inverse(m);
  CHECK(max_abs(m * mi - Mat<double>::identity(3)) < 1e-14);
  CHECK(det(m) == doctest::Approx(8.0));
  Mat<double> sing(2, 2);
  sing(0, 0) = 1; sing(0, 1) = 2; sing(1, 0) = 2; sing(1, 1) = 4;
  CHECK_THROWS_AS(inverse(sing), Error);
}

TEST_CASE("inverse works over dual scalars") {
  // d/dt inverse of [[1, t], [0, 1]] is [[0, -1], [0, 0]]
  Mat<D1> m(2, 2);
  m(0, 0) = D1(1.0); m(0, 1) = D1::seeded(0.3);
  m(1, 0) = D1(0.0); m(1, 1) = D1(1.0);
  Mat<D1> mi = inverse(m);
  CHECK(mi(0, 1).val == doctest::Approx(-0.3));
  CHECK(mi(0, 1).der == doctest::Approx(-1.0));
}

TEST_CASE("complex inverse") {
  Mat<C0> m(2, 2);
  m(0, 0) = C0(1, 1); m(0, 1) = C0(0, 2);
  m(1, 0) = C0(0, 0); m(1, 1) = C0(2, -1);
  Mat<C0> mi = inverse(m);
  CHECK(max_abs(m * mi - Mat<C0>::identity(2)) < 1e-14);
}

TEST_CASE("jacobi eigendecomposition of a symmetric matrix") {
  Mat<double> a(3, 3);
  a(0, 0) = 4; a(0, 1) = 1; a(0, 2) = 0;
  a(1, 0) = 1; a(1, 1) = 3; a(1, 2) = 1;
  a(2, 0) = 0; a(2, 1) = 1; a(2, 2) = 2;
  Vec<double> w;
  Mat<double> v;
  jacobi_eigen(a, w, v);
  // reconstruct
  Mat<double> rec(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += v(i, k) * w[k] * v(j, k);
      rec(i, j) = s;
    }
  CHECK(max_abs(rec - a) < 1e-12);
  CHECK(w[0] <= w[1]);
  CHECK(w[1] <= w[2]);
}

TEST_CASE("matrix exponential of a nilpotent generator") {
  Mat<double> m(2, 2);
  m(0, 1) = 1.0;
  Mat<double> e = expm(m);
  CHECK(e(0, 0) == doctest::Approx(1.0));
  CHECK(e(0, 1) == doctest::Approx(1.0));
  CHECK(e(1, 0) == doctest::Approx(0.0));
}
