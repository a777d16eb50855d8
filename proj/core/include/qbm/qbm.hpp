#pragma once

#include "qbm/bath.hpp"
#include "qbm/errors.hpp"
#include "qbm/kernels.hpp"
#include "qbm/measurement.hpp"
#include "qbm/observables.hpp"
#include "qbm/quadrature.hpp"
#include "qbm/version.hpp"
