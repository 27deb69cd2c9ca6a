#include <doctest.h>

#include "akv/frames.hpp"

using namespace akv;

namespace {
FrameBundle<double> bundle_at(const std::string& name, const Vec<double>& u) {
  const ChartedManifold& m = builtin_manifold(name);
  AmbientStructure amb(m);
  SurfaceStructure surf;
  return build_frames(amb, surf, FrameField::gram_schmidt(), u);
}
}  // namespace

TEST_CASE("flat frame is the identity") {
  Vec<double> u{0, 0, 0, 0};
  auto fb = bundle_at("flat_kahler", u);
  CHECK(max_abs(fb.real.E - Mat<double>::identity(4)) == 0.0);
}

TEST_CASE("sphere frame at the equator is diagonal (1,1)") {
  Vec<double> u{1.5707963267948966, 1.0};
  auto fb = bundle_at("sphere", u);
  CHECK(max_abs(fb.real.E - Mat<double>::identity(2)) < 1e-12);
}

TEST_CASE("sphere frame normalizes d_phi by 1/sin(theta)") {
  Vec<double> u{0.8, 2.0};
  auto fb = bundle_at("sphere", u);
  CHECK(fb.real.E(1, 1) == doctest::Approx(1.0 / std::sin(0.8)));
  CHECK(fb.real.E(0, 1) == 0.0);
}

TEST_CASE("gram-schmidt rejects non positive definite input") {
  Mat<double> g = Mat<double>::identity(3);
  g(2, 2) = -1.0;
  CHECK_THROWS_AS(gram_schmidt_frame(g), Error);
}

TEST_CASE("flat pseudoholomorphic frame: E_a = (e_a - i J e_a)/2") {
  Vec<double> u{0, 0, 0, 0};
  auto fb = bundle_at("flat_kahler", u);
  // column a=0 should be (1/2, 0, -i/2, 0)
  CHECK(fb.cplx.Eh(0, 0).re == doctest::Approx(0.5));
  CHECK(fb.cplx.Eh(2, 0).im == doctest::Approx(-0.5));
  CHECK(cx_abs(fb.cplx.Eh(1, 0)) == 0.0);
  CHECK(cx_abs(fb.cplx.Eh(3, 0)) == 0.0);
}

TEST_CASE("broken J is rejected") {
  Vec<double> u{0, 0, 0, 0};
  const ChartedManifold& m = builtin_manifold("flat_kahler");
  AmbientStructure amb(m);
  auto real = FrameField::gram_schmidt().eval(amb, u);
  Mat<double> Jzero(4, 4);
  CHECK_THROWS_AS(pseudoholomorphic_frame(Jzero, real), Error);
}

TEST_CASE("surface frame matches d/dz = (d_x - i d_y)/2") {
  SurfaceStructure s;
  auto f = surface_frame<double>(s.eps);
  CHECK(f.Ez(0, 0).re == doctest::Approx(0.5));
  CHECK(f.Ez(1, 0).im == doctest::Approx(-0.5));
  // coframe dz = dx + i dy
  CHECK(f.Ezi(0, 0).re == doctest::Approx(1.0));
  CHECK(f.Ezi(0, 1).im == doctest::Approx(1.0));
}

TEST_CASE("frame identity report: all residuals tight on the built-ins") {
  SurfaceStructure surf;
  for (const char* name : {"flat_kahler", "sphere", "nilmanifold"}) {
    const ChartedManifold& m = builtin_manifold(name);
    AmbientStructure amb(m);
    for (uint64_t k = 0; k < 25; ++k) {
      Vec<double> u = sample_point(m, 5, k);
      auto fb = build_frames(amb, surf, FrameField::gram_schmidt(), u);
      FrameReport rep = verify_frame_identities(amb, surf, fb, u);
      for (auto& [id, r] : rep) {
        CAPTURE(name);
        CAPTURE(id);
        CHECK(r < 1e-10);
      }
    }
  }
}

TEST_CASE("conjugation symmetry is exact by construction") {
  Vec<double> u = sample_point(builtin_manifold("nilmanifold"), 9, 0);
  auto fb = bundle_at("nilmanifold", u);
  // starred blocks are produced by conj(); check bitwise round trip
  Mat<C0> s = conj(fb.cplx.Eh);
  for (int i = 0; i < 4; ++i)
    for (int a = 0; a < 2; ++a) {
      CHECK(s(i, a).re == fb.cplx.Eh(i, a).re);
      CHECK(s(i, a).im == -fb.cplx.Eh(i, a).im);
    }
}

TEST_CASE("frame-inverse round trip on random vectors") {
  const ChartedManifold& m = builtin_manifold("nilmanifold");
  AmbientStructure amb(m);
  for (uint64_t k = 0; k < 10; ++k) {
    Vec<double> u = sample_point(m, 21, k);
    auto f = FrameField::gram_schmidt().eval(amb, u);
    uint64_t s = point_stream(77, k);
    Vec<double> v(4);
    for (int i = 0; i < 4; ++i) v[i] = 2 * uniform01(s) - 1;
    Vec<double> w = f.E * (f.Ei * v);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(w[i] - v[i]) < 1e-12);
  }
}
