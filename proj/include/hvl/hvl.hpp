// Umbrella header.

#ifndef HVL_HVL_HPP
#define HVL_HVL_HPP

#include "hvl/analytic.hpp"
#include "hvl/candidate_path.hpp"
#include "hvl/core.hpp"
#include "hvl/fft.hpp"
#include "hvl/hump.hpp"
#include "hvl/io.hpp"
#include "hvl/lemma.hpp"
#include "hvl/norms.hpp"
#include "hvl/quadrature.hpp"
#include "hvl/volterra.hpp"

#endif  // HVL_HVL_HPP
