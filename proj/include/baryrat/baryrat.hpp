#pragma once

#include "baryrat/aaa.hpp"
#include "baryrat/continuum.hpp"
#include "baryrat/core.hpp"
#include "baryrat/geometry.hpp"
#include "baryrat/laplace.hpp"
#include "baryrat/lawson.hpp"
#include "baryrat/spectra.hpp"
#include "baryrat/zeta.hpp"
