#include "cli.hpp"

int main(int argc, char** argv) {
    return kgex::cli::run(argc, argv);
}
