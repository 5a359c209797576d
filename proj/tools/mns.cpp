#include "mns/cli.hpp"

int main(int argc, char** argv) { return mns::cli_main(argc, argv); }
