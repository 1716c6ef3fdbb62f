#pragma once

#include "grid.hpp"
#include "quadrature.hpp"
#include "borel_function.hpp"
#include "norm.hpp"
#include "convolution.hpp"
#include "transforms.hpp"
#include "coefficients.hpp"
#include "solver.hpp"
#include "certificates.hpp"
#include "io.hpp"
