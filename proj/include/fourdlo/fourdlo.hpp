#pragma once

// Everything in one include.

#include "fourdlo/exactnum.hpp"
#include "fourdlo/quat4.hpp"
#include "fourdlo/cyclic.hpp"
#include "fourdlo/isometry.hpp"
#include "fourdlo/polytope.hpp"
#include "fourdlo/symmetry.hpp"
#include "fourdlo/projection.hpp"
#include "fourdlo/fixture.hpp"
#include "fourdlo/script/parser.hpp"
#include "fourdlo/script/sequencer.hpp"
#include "fourdlo/io/geometry.hpp"
#include "fourdlo/io/frames.hpp"
#include "fourdlo/io/live.hpp"
#include "fourdlo/validate.hpp"
