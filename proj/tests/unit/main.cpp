#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include "dircheeger/log.hpp"

int main(int argc, char** argv) {
  // several cases hand loopless graphs to vertex mode on purpose
  dircheeger::set_warning_sink({});
  doctest::Context context(argc, argv);
  return context.run();
}
