#include "taut/exact.hpp"

#include <stdexcept>

namespace taut {

Rational parse_rational(const std::string& text) {
  Rational out;
  if (text.empty() || out.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
  if (out.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  out.canonicalize();
  return out;
}

}  // namespace taut
