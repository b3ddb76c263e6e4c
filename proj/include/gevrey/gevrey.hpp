#pragma once

// Umbrella header: spectral regularity analysis for y'(t) = A y(t) with a
// diagonal scalar-type spectral operator A.

#include "gevrey/borel_function.hpp"
#include "gevrey/classifier.hpp"
#include "gevrey/complex_plane.hpp"
#include "gevrey/counterexamples.hpp"
#include "gevrey/errors.hpp"
#include "gevrey/evolution.hpp"
#include "gevrey/growth.hpp"
#include "gevrey/operator_calculus.hpp"
#include "gevrey/region.hpp"
#include "gevrey/spectrum.hpp"
#include "gevrey/state_vector.hpp"
