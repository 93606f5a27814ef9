#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "simbench/corpus.hpp"

namespace simbench {

// Row-per-sentence embedding matrix, row-major float32. Rows are never
// all-zero and every entry is finite.
struct EmbeddedCorpus {
    std::string source_id;
    std::size_t rows = 0;
    std::size_t dim = 0;
    std::vector<float> data;  // rows * dim, row-major

    const float* row(std::size_t r) const { return data.data() + r * dim; }

    EmbeddedCorpus subset(const std::vector<std::size_t>& indices,
                          const std::string& sub_id) const;
};

// Deterministic signed feature hashing: every token lands in a bucket with a
// +/-1 sign derived from a seed-mixed 64-bit hash; rows are L2-normalized.
// Requires dims >= 2 and at least one token per sentence.
EmbeddedCorpus hash_embed(const Corpus& corpus, std::size_t dims, std::uint64_t seed);

// Binary format: magic "EMBV", version 0x01, u32le rows, u32le dim, then
// rows*dim little-endian IEEE-754 float32, row-major. Round-trip bit-exact.
void save_embeddings(const EmbeddedCorpus& ec, const std::string& path);

// CSV fallback: header line "dim=D", one comma-separated row per line.
void save_embeddings_csv(const EmbeddedCorpus& ec, const std::string& path);

// Dispatches on the magic bytes: binary payloads load bit-exact, anything
// starting with "dim=" loads as CSV. Validates finiteness and shape.
EmbeddedCorpus load_embeddings(const std::string& path);

}  // namespace simbench
