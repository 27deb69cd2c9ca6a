#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "akv/almost_kahler.hpp"
#include "akv/manifold.hpp"

using namespace akv;

TEST_CASE("flat model evaluates to identity metric and Darboux omega") {
  const ChartedManifold& m = builtin_manifold("flat_kahler");
  Vec<double> p{0.3, -0.5, 1.0, 0.0};
  Mat<double> g = m.eval_mat("g", p);
  CHECK(max_abs(g - Mat<double>::identity(4)) == 0.0);
  Mat<double> om = m.eval_mat("omega", p);
  CHECK(om(0, 2) == 1.0);
  CHECK(om(1, 3) == 1.0);
  CHECK(max_abs(om + om.transposed()) == 0.0);
}

TEST_CASE("nilmanifold metric from the coframe: g_yy = 1 + x^2") {
  const ChartedManifold& m = builtin_manifold("nilmanifold");
  Vec<double> p{1.0, 0.0, 0.0, 0.0};
  Mat<double> g = m.eval_mat("g", p);
  CHECK(g(1, 1) == doctest::Approx(2.0));  // independently expanded by hand
  CHECK(g(1, 2) == doctest::Approx(-1.0));
}

TEST_CASE("eval errors: unknown label and out-of-domain point") {
  const ChartedManifold& m = builtin_manifold("flat_kahler");
  Vec<double> p{0, 0, 0, 0};
  CHECK_THROWS_AS(m.eval_mat("nosuch", p), Error);
  Vec<double> outside{99, 0, 0, 0};
  CHECK_THROWS_AS(m.check_point(outside), Error);
}

TEST_CASE("partial_derivative: exact derivatives with finite-difference oracle") {
  const ChartedManifold& nil = builtin_manifold("nilmanifold");
  Vec<double> p{1.0, 0.2, -0.3, 0.1};

  // constant field component -> zero
  auto d_t = partial_derivative(nil, "g", p, 3, 1);
  for (double v : d_t) CHECK(v == 0.0);

  // d/dx g_yy = 2x = 2 at x=1
  auto d_x = partial_derivative(nil, "g", p, 0, 1);
  CHECK(d_x[1 * 4 + 1] == doctest::Approx(2.0));

  // finite-difference oracle at step 1e-5, agreement to 1e-8
  double h = 1e-5;
  Vec<double> pp = p, pm = p;
  pp[0] += h;
  pm[0] -= h;
  double fd = (nil.eval_mat("g", pp)(1, 1) - nil.eval_mat("g", pm)(1, 1)) / (2 * h);
  CHECK(std::abs(d_x[5] - fd) < 1e-8);

  // second derivative d2/dx2 g_yy = 2
  auto d_xx = partial_derivative(nil, "g", p, 0, 2);
  CHECK(d_xx[5] == doctest::Approx(2.0));

  CHECK_THROWS_AS(partial_derivative(nil, "g", p, 0, 3), Error);
}

TEST_CASE("polynomial derivative example: d/dx x^2 = 6 at x=3") {
  ChartedManifold m;
  m.name = "mini";
  m.dim = 2;
  m.coords = {"x", "y"};
  m.domain = {{-5, 5}, {-5, 5}};
  m.add_field("f", 0, 0, {"x^2"});
  auto d = partial_derivative(m, "f", Vec<double>{3.0, 0.0}, 0, 1);
  CHECK(d[0] == doctest::Approx(6.0));
}

TEST_CASE("ambient structure invariants hold at 100 seeded points") {
  for (const char* name : {"flat_kahler", "sphere", "nilmanifold"}) {
    const ChartedManifold& m = builtin_manifold(name);
    AmbientStructure amb(m);
    for (uint64_t k = 0; k < 100; ++k) {
      Vec<double> u = sample_point(m, 7, k);
      StructureResiduals r = structure_residuals(amb, u);
      CAPTURE(name);
      CHECK(r.j_squared < 1e-10);
      CHECK(r.g_symmetric < 1e-12);
      CHECK(r.omega_antisym < 1e-12);
      CHECK(r.compatible < 1e-10);
      CHECK(r.d_omega < 1e-10);
      CHECK(r.g_min_eigen > 0);
    }
  }
}

TEST_CASE("manifold JSON round trip") {
  std::string cfg = R"({
    "name": "loaded",
    "dim": 2,
    "coordinates": ["a", "b"],
    "domain": [[-1, 1], [-1, 1]],
    "fields": {
      "g": {"valence": [0, 2], "components": ["1+a^2", "0", "0", "1"]}
    }
  })";
  ChartedManifold m = load_manifold_json(cfg);
  CHECK(m.dim == 2);
  CHECK(m.eval_mat("g", Vec<double>{0.5, 0.0})(0, 0) == doctest::Approx(1.25));

  CHECK_THROWS_AS(load_manifold_json("{" + cfg), Error);
  CHECK_THROWS_AS(load_manifold_json(R"({"name":"x","dim":2,"coordinates":["a"],
      "domain":[[-1,1],[-1,1]],"fields":{}})"),
                  Error);
  CHECK_THROWS_AS(load_manifold_file("/does/not/exist.json"), Error);
}

TEST_CASE("seeded sampling is deterministic and in-domain") {
  const ChartedManifold& m = builtin_manifold("sphere");
  Vec<double> a = sample_point(m, 42, 5);
  Vec<double> b = sample_point(m, 42, 5);
  for (int i = 0; i < m.dim; ++i) CHECK(a[i] == b[i]);
  m.check_point(a);
  Vec<double> c = sample_point(m, 43, 5);
  CHECK(a[0] != c[0]);
}
