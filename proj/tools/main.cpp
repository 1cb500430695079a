#include "cnets/cli.hpp"

int main(int argc, char** argv) {
    return cnets::cli::main_entry(argc, argv);
}
