#pragma once
// Shared test helpers: printable q-objects and model sweeps.

#include <numeric>
#include <ostream>

#include "doctest.h"
#include "virasoro/cfmodel.hpp"
#include "virasoro/qalg.hpp"

namespace vir {
inline std::ostream& operator<<(std::ostream& os, const QPoly& p) { return os << p.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const QSeries& s) { return os << s.to_string(); }
}  // namespace vir

namespace vir::testing {

template <class F>
void for_models(int max_pp, F&& f, int min_p = 1) {
  for (int pp = 2; pp <= max_pp; ++pp)
    for (int p = min_p; p < pp; ++p)
      if (std::gcd(p, pp) == 1) f(build_model(p, pp));
}

}  // namespace vir::testing
