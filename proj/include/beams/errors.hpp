#ifndef BEAMS_ERRORS_HPP
#define BEAMS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace beams {

struct QuadratureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateCoupling : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoPositiveSolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BlowUp : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TailNotAsymptotic : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct JacobianSingular : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotConformal : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InnerSolveFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonIntegrable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonIntegrableTail : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WrongModel : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroMass : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace beams

#endif
