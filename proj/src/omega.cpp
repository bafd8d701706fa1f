#include "msl/omega.hpp"

namespace msl {

OmegaBlocks mean_matrix(const SelfAdjointProblem& canonical) {
  if (!is_block_canonical(canonical))
    throw ValidationError("mean_matrix: problem must be in block-canonical form");
  const int m = canonical.m, p = canonical.p;
  OmegaBlocks ob;
  ob.omega = hermitized(canonical.Q.halfIntegral());
  ob.omega11 = ob.omega.topLeftCorner(p, p);
  ob.omega12 = ob.omega.topRightCorner(p, m - p);
  ob.omega21 = ob.omega.bottomLeftCorner(m - p, p);
  ob.omega22 = ob.omega.bottomRightCorner(m - p, m - p);
  return ob;
}

}  // namespace msl
