#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace darmon {

using Real = boost::multiprecision::mpfr_float;

void set_complex_precision_bits(unsigned bits);
unsigned complex_precision_bits();

struct Complex {
  Real re, im;
  Complex() : re(0), im(0) {}
  Complex(const Real& r) : re(r), im(0) {}
  Complex(const Real& r, const Real& i) : re(r), im(i) {}

  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  Complex operator-() const { return {-re, -im}; }
  Complex operator*(const Complex& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  Complex operator/(const Complex& o) const;
  Complex conj() const { return {re, -im}; }
  Real abs() const;
};

Complex cexp(const Complex& z);
Complex csqrt(const Complex& z);
Real pi();
std::string to_decimal(const Real& x, int digits);

}  // namespace darmon
