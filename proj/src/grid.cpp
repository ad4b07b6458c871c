#include "shrira/grid.hpp"

#include <string>

#include "shrira/errors.hpp"

namespace shrira {

bool is_power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

GridSpec::GridSpec(int mx, int my, int os) : modes_x(mx), modes_y(my), oversample(os) {
  if (!is_power_of_two(mx) || !is_power_of_two(my) || mx < 2 || my < 2) {
    throw PreconditionError("grid mode counts must be powers of two >= 2, got " +
                            std::to_string(mx) + "x" + std::to_string(my));
  }
  if (os < 1) throw PreconditionError("grid oversample must be >= 1, got " + std::to_string(os));
}

}  // namespace shrira
