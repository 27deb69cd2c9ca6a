// Built-in manifold models.
//
// flat_kahler: R^4 with identity metric, standard symplectic pairing of
//   (x1,x2) with (x3,x4), constant complex structure. Abelian control.
// sphere: unit-sphere chart in polar coordinates, round metric, area form,
//   rotation-by-90-degrees complex structure. Curved integrable control.
// nilmanifold: local chart of the Kodaira-Thurston type nilmanifold with
//   coframe (dx, dy, dz - x dy, dt). Closed symplectic form, compatible
//   metric, non-integrable J. Strictly almost Kahler target.

#include <mutex>

#include "akv/manifold.hpp"

namespace akv {

namespace {

ChartedManifold make_flat_kahler() {
  ChartedManifold m;
  m.name = "flat_kahler";
  m.dim = 4;
  m.coords = {"x1", "x2", "x3", "x4"};
  m.domain.assign(4, {-2.0, 2.0});
  m.add_field("g", 0, 2,
              {"1", "0", "0", "0",
               "0", "1", "0", "0",
               "0", "0", "1", "0",
               "0", "0", "0", "1"});
  // omega_13 = omega_24 = 1
  m.add_field("omega", 0, 2,
              {"0", "0", "1", "0",
               "0", "0", "0", "1",
               "-1", "0", "0", "0",
               "0", "-1", "0", "0"});
  // J e1 = e3, J e2 = e4, J e3 = -e1, J e4 = -e2
  m.add_field("J", 1, 1,
              {"0", "0", "-1", "0",
               "0", "0", "0", "-1",
               "1", "0", "0", "0",
               "0", "1", "0", "0"});
  return m;
}

ChartedManifold make_sphere() {
  ChartedManifold m;
  m.name = "sphere";
  m.dim = 2;
  m.coords = {"theta", "phi"};
  m.domain = {{0.4, 2.7}, {0.1, 6.2}};
  m.add_field("g", 0, 2, {"1", "0", "0", "sin(theta)^2"});
  m.add_field("omega", 0, 2, {"0", "sin(theta)", "-sin(theta)", "0"});
  // J d_theta = (1/sin) d_phi, J d_phi = -sin d_theta
  m.add_field("J", 1, 1, {"0", "-sin(theta)", "1/sin(theta)", "0"});
  return m;
}

ChartedManifold make_nilmanifold() {
  ChartedManifold m;
  m.name = "nilmanifold";
  m.dim = 4;
  m.coords = {"x", "y", "z", "t"};
  m.domain.assign(4, {-1.5, 1.5});
  m.add_field("g", 0, 2,
              {"1", "0", "0", "0",
               "0", "1+x^2", "-x", "0",
               "0", "-x", "1", "0",
               "0", "0", "0", "1"});
  // omega = dx^(dz - x dy) + dy^dt
  m.add_field("omega", 0, 2,
              {"0", "-x", "1", "0",
               "x", "0", "0", "1",
               "-1", "0", "0", "0",
               "0", "-1", "0", "0"});
  // J in the holonomic basis, from J(frame): e1->e3, e2->e4
  m.add_field("J", 1, 1,
              {"0", "x", "-1", "0",
               "0", "0", "0", "-1",
               "1", "0", "0", "-x",
               "0", "1", "0", "0"});
  return m;
}

std::map<std::string, ChartedManifold>& registry() {
  static std::map<std::string, ChartedManifold> reg;
  static std::once_flag once;
  std::call_once(once, [] {
    reg.emplace("flat_kahler", make_flat_kahler());
    reg.emplace("sphere", make_sphere());
    reg.emplace("nilmanifold", make_nilmanifold());
  });
  return reg;
}

}  // namespace

const ChartedManifold& builtin_manifold(const std::string& name) {
  auto& reg = registry();
  auto it = reg.find(name);
  if (it == reg.end()) throw Error("unknown manifold '" + name + "'");
  return it->second;
}

std::vector<std::string> builtin_manifold_names() {
  std::vector<std::string> names;
  for (auto& [k, v] : registry()) names.push_back(k);
  return names;
}

std::vector<double> partial_derivative(const ChartedManifold& m, const std::string& label,
                                       const Vec<double>& point, int direction, int order) {
  m.check_point(point);
  if (direction < 0 || direction >= m.dim) throw Error("bad derivative direction");
  if (order == 1) {
    Vec<D1> x(m.dim);
    for (int i = 0; i < m.dim; ++i) x[i] = D1(point[i], i == direction ? 1.0 : 0.0);
    auto vals = m.eval("" + label, x);
    std::vector<double> out(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) out[i] = vals[i].der;
    return out;
  }
  if (order == 2) {
    Vec<D2> x(m.dim);
    for (int i = 0; i < m.dim; ++i) {
      double seed = i == direction ? 1.0 : 0.0;
      x[i] = D2(D1(point[i], seed), D1(seed, 0.0));
    }
    auto vals = m.eval(label, x);
    std::vector<double> out(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) out[i] = vals[i].der.der;
    return out;
  }
  throw Error("derivative order > 2 unsupported");
}

}  // namespace akv
