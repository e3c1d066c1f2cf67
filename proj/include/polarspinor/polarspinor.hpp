#pragma once

#include "bilinears.hpp"
#include "clifford.hpp"
#include "connection.hpp"
#include "core.hpp"
#include "dirac.hpp"
#include "lounesto.hpp"
#include "matrix_exponential.hpp"
#include "planewave.hpp"
#include "polar.hpp"
