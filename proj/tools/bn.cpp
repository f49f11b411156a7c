#include "bn/harness.hpp"

int main(int argc, char** argv) { return bn::cli_dispatch(argc, argv); }
