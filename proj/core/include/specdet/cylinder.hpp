#pragma once

#include <string>

#include "specdet/numerics.hpp"
#include "specdet/spectra.hpp"

namespace specdet {

// Finite cylinder [0, r] x Y with Dirichlet ends, Delta = -d^2/du^2 + Delta_Y.
struct CylinderModel {
  CrossSectionSpectrum spectrum;
  double r = 1.0;
};

// Closed product formula
//   det = (2r)^h exp(-r xi'(0)/2) (det Delta_Y)^{-1/2} prod_{mu>0} (1 - e^{-2 r sqrt(mu)})^mult.
ValueWithError cylinder_det_closed(const CylinderModel& m);

// Same assembly with exp(-r xi'(0)) in place of exp(-r xi'(0)/2).  The two
// normalizations circulate in the literature; adjudicate_cylinder_convention
// compares both against the direct route.
ValueWithError cylinder_det_closed_alt(const CylinderModel& m);

// Independent evaluation of -zeta_cyl'(0): Euler-Maclaurin Riemann zeta for
// the kernel tower, Richardson-extrapolated numeric xi'(0), and the
// Bessel-integral mode series for the interface term.  Shares no formula
// with the closed route beyond the spectrum itself.
ValueWithError cylinder_det_direct(const CylinderModel& m);

struct CylinderAdjudication {
  double closed = 0.0;
  double closed_alt = 0.0;
  double direct = 0.0;
  double closed_vs_direct = 0.0;      // |closed/direct - 1|
  double closed_alt_vs_direct = 0.0;  // |closed_alt/direct - 1|
  std::string chosen;                 // "half" when exp(-r xi'/2) wins
};

CylinderAdjudication adjudicate_cylinder_convention(const CylinderModel& m);

enum class EndBC { dirichlet, neumann };

// Zeta determinant of the cylinder [0, L] x Y with independent end
// conditions; for Neumann-Neumann with ker Delta_Y != 0 this is the
// determinant over the positive spectrum.
ValueWithError cylinder_det_mixed(const CrossSectionSpectrum& spec, double L,
                                  EndBC left, EndBC right);

}  // namespace specdet
