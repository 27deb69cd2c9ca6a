#pragma once

// Graded covariant phase space and the BRST algebra: the ghost current
// Upsilon|+, graded Hamiltonian fields, the BRST transformation as a
// contraction with d Upsilon|+, its comparison against the closed forms,
// nilpotency, and the Darboux-gauge (Witten-form) variant.
//
// Ghost values are never sampled: eta^A and the ghost-momentum blocks are
// Grassmann symbols, and every check compares coefficients per monomial.

#include "akv/phase.hpp"

namespace akv {

struct BrstSetup {
  const AmbientStructure* amb;
  const SurfaceStructure* surf;
  FrameField field;
};

// residual report at one graded phase point (momenta from the sample are
// projected onto the constrained subbundle first)
std::map<std::string, double> brst_report(const BrstSetup& bs, const PhasePointSample& sp,
                                          bool with_nilpotency = true);

// Darboux-gauge comparison of the closed-form transformations with their
// curvature-substituted versions
std::map<std::string, double> witten_report(const AmbientStructure& amb,
                                            const SurfaceStructure& surf,
                                            const PhasePointSample& sp);

}  // namespace akv
