// Writes the planted demo fixture (corpus.jsonl, gazetteer.tsv, bench.conf).
#include <cstdio>
#include <cstdlib>
#include <exception>

#include "support/planted.hpp"

int main(int argc, char** argv) {
  if (argc < 2 || argc > 3) {
    std::fprintf(stderr, "usage: %s OUT_DIR [SEED]\n", argv[0]);
    return 2;
  }
  try {
    const std::uint64_t seed = argc == 3 ? std::strtoull(argv[2], nullptr, 10) : 2011;
    tmhc::testing::write_planted_fixture(argv[1], seed);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
