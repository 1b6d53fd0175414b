#include "zpgd/types.hpp"

#include <cmath>

namespace zpgd {

void validate(const DeltaRiemannData& data) {
  const double fields[] = {data.a,  data.c,  data.b,    data.d,
                           data.ua, data.ub, data.rhoc, data.rhod};
  for (double f : fields) {
    if (!std::isfinite(f)) {
      throw std::domain_error("initial data must be finite");
    }
  }
  if (!(data.a < data.c && data.c < data.b && data.b < data.d)) {
    throw std::domain_error("node ordering must be a < c < b < d");
  }
}

}  // namespace zpgd
