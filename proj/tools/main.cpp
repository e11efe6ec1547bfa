#include "msdiff/cli.hpp"

int main(int argc, char** argv) { return msdiff::dispatch(argc, argv); }
