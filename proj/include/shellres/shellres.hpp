#pragma once

#include "shellres/config.hpp"
#include "shellres/dual.hpp"
#include "shellres/error.hpp"
#include "shellres/expansions.hpp"
#include "shellres/gamow.hpp"
#include "shellres/green.hpp"
#include "shellres/jost.hpp"
#include "shellres/model.hpp"
#include "shellres/parallel.hpp"
#include "shellres/poles.hpp"
#include "shellres/quadrature.hpp"
#include "shellres/study.hpp"
#include "shellres/verify.hpp"
