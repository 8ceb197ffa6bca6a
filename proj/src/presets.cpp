#include "levyset/presets.hpp"

#include <stdexcept>

namespace levyset {

MonotoneDemoSetup monotone_demo_setup(const std::string& preset, double beta, int grid_size) {
  MonotoneDemoSetup setup;
  setup.name = preset;
  if (grid_size > 0) setup.grid_size = grid_size;
  if (preset == "example6") {
    const double b = beta > 0.5 ? beta : 0.75;
    setup.kernel = make_riemann_liouville(b, 1.0);
    setup.driver = make_compound_poisson_driver(cp_uniform_symmetric(1.0, 1.0, 2.0), 1.0);
    setup.ingredients.x0 = {-0.25, 0.25};
    setup.ingredients.k1 = {-0.5, 1.0};
    setup.ingredients.k2 = {0.5, 1.0};
    setup.ingredients.k3 = {1.0, 1.0};
    setup.ingredients.k4 = {0.0};
    return setup;
  }
  if (preset == "example7" || preset == "example8") {
    const double b = beta > 0.5 ? beta : 0.75;
    setup.kernel = make_product(make_exponential(1.0, 1.0), make_riemann_liouville(b, 1.0));
    setup.driver = make_stable_driver(1.5, 1.0, 0.01, 1, 1.0);
    setup.ingredients.x0 = {-0.25, 0.25};
    setup.ingredients.k1 = {-0.5, 1.0};
    setup.ingredients.k2 = {0.0};
    setup.ingredients.k3 = {0.5, 1.0};
    setup.ingredients.k4 = {0.5, 1.0};
    return setup;
  }
  if (preset == "example9") {
    const double b = beta > 0.5 ? beta : 0.75;
    setup.kernel = make_molchan_golosov(b, 1.0);
    LevyDriverSpec driver;
    driver.horizon = 1.0;
    setup.driver = driver;
    setup.ingredients.x0 = {0.0, 0.0};
    setup.ingredients.k1 = {0.0, 0.0};
    setup.ingredients.k2 = {0.0, 1.0};
    setup.ingredients.k3 = {0.0, 0.0};
    setup.ingredients.k4 = {0.0};
    return setup;
  }
  throw std::invalid_argument("unknown preset: " + preset +
                              " (expected example6|example7|example8|example9)");
}

}  // namespace levyset
