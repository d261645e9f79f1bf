#pragma once

#include "gabor/rational.hpp"
#include "gabor/polynomial.hpp"
#include "gabor/algebraic.hpp"
#include "gabor/window.hpp"
#include "gabor/window_io.hpp"
#include "gabor/lattice.hpp"
#include "gabor/analysis.hpp"
#include "gabor/obstructions.hpp"
#include "gabor/dual.hpp"
#include "gabor/verify.hpp"
#include "gabor/atlas.hpp"
