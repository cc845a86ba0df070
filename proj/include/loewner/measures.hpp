#pragma once

#include <vector>

#include "loewner/funexpr.hpp"
#include "loewner/measure_types.hpp"

namespace loewner {

// Checked evaluation: DomainError unless x lies in the representation's interval.
double eval_om(const OMRep& rep, double x);
double eval_soc(const SOCRep& rep, double x);
double eval_oc(const OCRep& rep, double x);

/// Difference quotient of an OM representation at x0: weights w/|x0 - r|,
/// split by side.
SOCRep om_to_soc(const OMRep& rep, double x0);

/// Difference quotient of an SOC representation at x1 as an OM
/// representation centered at x1.
OMRep soc_to_om(const SOCRep& rep, double x1);

/// f~(x) = (x - b) g(x) extended to the excluded endpoint b, as an OM
/// representation centered at b.
struct EndpointExtension {
  OMRep rep;
  double b;
  int side;           // +1 right endpoint, -1 left endpoint
  double delta;       // mass of the boundary atom at b
  double value_at_b;  // f~(b)
  double max_residual;
};

EndpointExtension extend_at_endpoint(const SOCRep& g, double b);

/// Residual of the endpoint identity at x:
/// (f~(x) - f~(b))/(x - b) against g(x) - delta/(b - x) (right) or
/// g(x) - delta/(x - b) (left).
double endpoint_identity_residual(const SOCRep& g, const EndpointExtension& ext, double x);

/// Representation of g(x) = phi(x^2) from one of phi centered at 0 with
/// only right-hand atoms.
OCRep substitute_square(const OCRep& phi);

struct PoissonRecovery {
  double weight;                 // Richardson-extrapolated
  std::vector<double> eps;
  std::vector<double> raw;       // one estimate per eps
};

/// Weight of an atom at r recovered from (1/pi) int Im f(t + i eps) dt over
/// the window. `side` = -1 for an atom left of the domain.
PoissonRecovery recover_atom_weight(const FunctionExpr& f, double r, double window_lo, double window_hi,
                                    std::vector<double> eps_list = {1e-2, 1e-3, 1e-4}, int side = +1);

}  // namespace loewner
