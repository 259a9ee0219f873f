#include "fbo/harness.hpp"

int main(int argc, char** argv) { return fbo::run_cli(argc, argv); }
