#include "darmon/complex.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace darmon {

namespace {
unsigned g_bits = 128;
}

void set_complex_precision_bits(unsigned bits) {
  g_bits = bits;
  Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2);
}

unsigned complex_precision_bits() { return g_bits; }

Complex Complex::operator/(const Complex& o) const {
  Real d = o.re * o.re + o.im * o.im;
  return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
}

Real Complex::abs() const { return boost::multiprecision::sqrt(re * re + im * im); }

Complex cexp(const Complex& z) {
  Real m = boost::multiprecision::exp(z.re);
  return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

Complex csqrt(const Complex& z) {
  Real r = z.abs();
  Real a = boost::multiprecision::sqrt((r + z.re) / 2);
  Real b = boost::multiprecision::sqrt((r - z.re) / 2);
  if (z.im < 0) b = -b;
  return {a, b};
}

Real pi() { return boost::multiprecision::acos(Real(-1)); }

std::string to_decimal(const Real& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::scientific << x;
  return os.str();
}

}  // namespace darmon
