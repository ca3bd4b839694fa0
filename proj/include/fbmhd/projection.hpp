#pragma once

#include "fbmhd/field.hpp"

namespace fbmhd {

struct ProjectionOptions {
  double tol = 1e-10;
  int max_iter = 3000;
};

// Both return perp_grad(psi), with psi solving curl perp_grad psi = curl v on
// the interior rings, so the output is divergence free to roundoff and keeps
// the interior vorticity. rot_projection takes psi = 0 on the boundary (exactly
// tangent output); div_free_projection takes boundary values that keep the
// normal trace up to its mean. Both are idempotent.
VectorField div_free_projection(const VectorField& v, const ProjectionOptions& opt = {});
VectorField rot_projection(const VectorField& v, const ProjectionOptions& opt = {});

// The stream function behind either projection.
ScalarField stream_function(const VectorField& v, bool tangent, const ProjectionOptions& opt = {});

struct HodgeSplit {
  VectorField rot, irrot;
};
HodgeSplit hodge_split(const VectorField& v, const ProjectionOptions& opt = {});

double divergence_residual(const VectorField& v);
double tangency_residual(const VectorField& v);

}  // namespace fbmhd
