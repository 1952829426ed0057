#include "commands.hpp"

int main(int argc, char** argv) { return qwalk::cli::run(argc, argv); }
