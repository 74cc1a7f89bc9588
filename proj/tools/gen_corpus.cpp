// Writes the fixture corpus to a directory.  The shipped corpus/ tree is the
// output of this tool; the test suite checks the two stay in sync.

#include <cstdio>
#include <string>

#include "mellnet/corpus_io.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s OUTPUT_DIR\n", argv[0]);
        return 1;
    }
    try {
        mellnet::Corpus c = mellnet::build_corpus();
        mellnet::write_corpus(c, argv[1]);
        std::printf("wrote %zu single fixtures and %zu pair fixtures to %s\n", c.singles.size(),
                    c.pairs.size(), argv[1]);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
