#pragma once

#include <cstddef>
#include <vector>

namespace scenebench {

// Fixed-length real vector produced by an embedding service. Dimension is the
// value count; entries must be finite, and any vector used for similarity
// needs a nonzero norm.
struct EmbeddingVector {
    std::vector<double> values;

    std::size_t dim() const { return values.size(); }
};

// sim(a, b) = dot(a, b) / (||a|| * ||b||), clamped to [-1, 1].
// Throws InputError on dimension mismatch or a zero-norm argument.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

namespace kernels {

// Full n x n cosine similarity matrix, row-major. Inputs must share one
// dimension and have nonzero norms.
std::vector<double> pairwise_cosine(const std::vector<EmbeddingVector>& vectors);

namespace serial {
// Plain-loop reference used by tests and the kernel benchmark.
std::vector<double> pairwise_cosine(const std::vector<EmbeddingVector>& vectors);
}  // namespace serial

}  // namespace kernels

}  // namespace scenebench
