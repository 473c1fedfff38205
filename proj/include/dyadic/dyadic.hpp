#pragma once

#include "dyadic/core.hpp"
#include "dyadic/grid.hpp"
#include "dyadic/haar.hpp"
#include "dyadic/besov.hpp"
#include "dyadic/nonlocal.hpp"
#include "dyadic/evolution.hpp"
#include "dyadic/maximal.hpp"
#include "dyadic/samples.hpp"
#include "dyadic/report.hpp"
#include "dyadic/verify.hpp"
