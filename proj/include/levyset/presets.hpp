#pragma once

#include <string>

#include "levyset/kernels.hpp"
#include "levyset/levy.hpp"
#include "levyset/monotone.hpp"

namespace levyset {

// Bundled set-valued process configurations for the monotone demos: a finite
// activity jump-diffusion with ambiguous drift and volatility (example6), an
// infinite-variation pure-jump process under a damped singular kernel
// (example7 / example8), and the fractional Brownian family whose increasing
// envelope is the running min/max (example9).
struct MonotoneDemoSetup {
  std::string name;
  Kernel kernel;
  LevyDriverSpec driver;
  MonotoneIngredients ingredients;
  int grid_size = 256;
};

// `beta` <= 0 picks the preset default.
MonotoneDemoSetup monotone_demo_setup(const std::string& preset, double beta = 0.0,
                                      int grid_size = 0);

}  // namespace levyset
