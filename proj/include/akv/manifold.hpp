#pragma once

// Charted local manifold models. A manifold is a coordinate patch with
// named tensor fields whose components are arithmetic expressions in the
// coordinates; evaluation is templated on the scalar type so the same
// definitions serve plain evaluation and exact dual-number derivatives.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "akv/expr.hpp"
#include "akv/linalg.hpp"

namespace akv {

struct TensorFieldSpec {
  int rank_up = 0;
  int rank_down = 0;
  std::vector<ExprPtr> components;  // dim^(rank_up+rank_down), row-major

  int total_rank() const { return rank_up + rank_down; }
};

class ChartedManifold {
 public:
  std::string name;
  int dim = 0;
  std::vector<std::string> coords;
  std::vector<std::pair<double, double>> domain;  // per-coordinate sampling interval

  void add_field(const std::string& label, int rank_up, int rank_down,
                 const std::vector<std::string>& exprs) {
    TensorFieldSpec spec;
    spec.rank_up = rank_up;
    spec.rank_down = rank_down;
    size_t want = 1;
    for (int r = 0; r < rank_up + rank_down; ++r) want *= size_t(dim);
    if (exprs.size() != want)
      throw Error("field '" + label + "': expected " + std::to_string(want) +
                  " components, got " + std::to_string(exprs.size()));
    for (const auto& s : exprs) spec.components.push_back(parse_expr(s, coords));
    fields_[label] = std::move(spec);
    sources_[label] = exprs;
  }

  bool has_field(const std::string& label) const { return fields_.count(label) != 0; }

  const TensorFieldSpec& field(const std::string& label) const {
    auto it = fields_.find(label);
    if (it == fields_.end()) throw Error("unknown field label '" + label + "'");
    return it->second;
  }

  const std::map<std::string, std::vector<std::string>>& field_sources() const {
    return sources_;
  }

  void check_point(const Vec<double>& x) const {
    if (x.n != dim) throw Error("point dimension mismatch");
    for (int i = 0; i < dim; ++i)
      if (x[i] < domain[i].first || x[i] > domain[i].second)
        throw Error("point outside sample domain in coordinate " + coords[i]);
  }

  template <class T>
  std::vector<T> eval(const std::string& label, const Vec<T>& x) const {
    const TensorFieldSpec& spec = field(label);
    std::vector<T> out;
    out.reserve(spec.components.size());
    for (const auto& e : spec.components) out.push_back(e->eval(x));
    return out;
  }

  // Rank-2 fields as matrices (first index = row).
  template <class T>
  Mat<T> eval_mat(const std::string& label, const Vec<T>& x) const {
    const TensorFieldSpec& spec = field(label);
    if (spec.total_rank() != 2) throw Error("field '" + label + "' is not rank 2");
    Mat<T> m(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = spec.components[i * dim + j]->eval(x);
    return m;
  }

 private:
  std::map<std::string, TensorFieldSpec> fields_;
  std::map<std::string, std::vector<std::string>> sources_;
};

// Public differentiation entry point: exact derivative of a tensor field's
// components along one coordinate direction, order 1 or 2.
std::vector<double> partial_derivative(const ChartedManifold& m, const std::string& label,
                                       const Vec<double>& point, int direction, int order);

// --- deterministic sampling -------------------------------------------------

inline uint64_t splitmix64(uint64_t& s) {
  uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double uniform01(uint64_t& s) {
  return double(splitmix64(s) >> 11) * 0x1.0p-53;
}

// Stream-seeded per (seed, index); independent of evaluation order, so
// point loops can run in any schedule and still reproduce bit-identically.
inline uint64_t point_stream(uint64_t seed, uint64_t index) {
  uint64_t s = seed ^ (0x2545f4914f6cdd1dULL * (index + 1));
  splitmix64(s);
  return s;
}

inline Vec<double> sample_point(const ChartedManifold& m, uint64_t seed, uint64_t index) {
  uint64_t s = point_stream(seed, index);
  Vec<double> x(m.dim);
  for (int i = 0; i < m.dim; ++i) {
    auto [lo, hi] = m.domain[i];
    x[i] = lo + (hi - lo) * uniform01(s);
  }
  return x;
}

// --- registry / loading ------------------------------------------------------

// The three built-in models: "flat_kahler", "sphere", "nilmanifold".
const ChartedManifold& builtin_manifold(const std::string& name);
std::vector<std::string> builtin_manifold_names();

// Structured-text (JSON) manifold definitions; see README for the schema.
ChartedManifold load_manifold_json(const std::string& json_text);
ChartedManifold load_manifold_file(const std::string& path);

}  // namespace akv
