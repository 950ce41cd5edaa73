#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "mimogan/common/allocator.hpp"

int main(int argc, char** argv) {
  mimogan::tune_allocator();
  doctest::Context context(argc, argv);
  return context.run();
}
