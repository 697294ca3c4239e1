#pragma once

#include "gluskabi/banded.hpp"
#include "gluskabi/errors.hpp"
#include "gluskabi/operator.hpp"
#include "gluskabi/oracle.hpp"
#include "gluskabi/quadrature.hpp"
#include "gluskabi/raccordation.hpp"
#include "gluskabi/rational.hpp"
#include "gluskabi/signal.hpp"
#include "gluskabi/trajectory.hpp"
