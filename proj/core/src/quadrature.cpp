#include "qbm/quadrature.hpp"

namespace qbm {

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw DomainError("QuadratureConfig: tolerances must be > 0");
    }
    if (max_panels < 1) throw DomainError("QuadratureConfig: max_panels must be >= 1");
}

}  // namespace qbm
