#include "signsearch/cli.hpp"

int main(int argc, char** argv) {
    return signsearch::cli_run({argv + 1, argv + argc});
}
