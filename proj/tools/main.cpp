#include "oponet/cli.hpp"

int main(int argc, char** argv) { return oponet::run(argc, argv); }
