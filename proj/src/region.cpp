#include "irp/region.hpp"

namespace irp {

std::string_view to_string(Constraint c) {
  switch (c) {
    case Constraint::none:
      return "none";
    case Constraint::rho:
      return "rho";
    case Constraint::R:
      return "R";
    case Constraint::q:
      return "q";
  }
  return "unknown";
}

}  // namespace irp
