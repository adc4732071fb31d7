#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "darmon/complex.hpp"

int main(int argc, char** argv) {
  darmon::set_complex_precision_bits(128);
  doctest::Context ctx;
  ctx.applyCommandLine(argc, argv);
  return ctx.run();
}
