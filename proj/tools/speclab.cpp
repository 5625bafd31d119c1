#include <string>
#include <vector>

#include "speclab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return speclab::speclab_main(args);
}
