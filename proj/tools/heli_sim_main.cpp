#include "heli/cli.hpp"

int main(int argc, char** argv) {
  return heli::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
