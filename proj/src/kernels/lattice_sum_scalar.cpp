#include <cmath>
#include <stdexcept>

#include "abelscroll/lattice_sum.hpp"

namespace abelscroll {

LatticeSums lattice_sum_scalar(const LatticeTerms& terms) {
  const std::size_t n = terms.log_mag.size();
  if (terms.phase.size() != n || terms.weight1.size() != n || terms.weight2.size() != n) {
    throw std::invalid_argument("lattice_sum: term arrays differ in length");
  }
  double vr = 0, vi = 0, ar = 0, ai = 0, br = 0, bi = 0, mag = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double e = std::exp(terms.log_mag[t]);
    const double re = e * std::cos(terms.phase[t]);
    const double im = e * std::sin(terms.phase[t]);
    vr += re;
    vi += im;
    ar += terms.weight1[t] * re;
    ai += terms.weight1[t] * im;
    br += terms.weight2[t] * re;
    bi += terms.weight2[t] * im;
    mag += e;
  }
  return LatticeSums{{vr, vi}, {ar, ai}, {br, bi}, mag};
}

}  // namespace abelscroll
