#include "scenebench/embedding.hpp"

#include <cmath>
#include <string>

#include "scenebench/errors.hpp"

namespace scenebench {

namespace {

double norm2(const EmbeddingVector& v) {
    double acc = 0.0;
    for (double x : v.values) {
        acc += x * x;
    }
    return std::sqrt(acc);
}

double clamp_unit(double x) {
    if (x > 1.0) return 1.0;
    if (x < -1.0) return -1.0;
    return x;
}

std::vector<double> norms_checked(const std::vector<EmbeddingVector>& vectors) {
    std::vector<double> norms(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].dim() != vectors[0].dim()) {
            throw InputError("pairwise_cosine: vector " + std::to_string(i) + " has dim " +
                             std::to_string(vectors[i].dim()) + ", expected " +
                             std::to_string(vectors[0].dim()));
        }
        norms[i] = norm2(vectors[i]);
        if (norms[i] == 0.0) {
            throw InputError("pairwise_cosine: vector " + std::to_string(i) + " has zero norm");
        }
    }
    return norms;
}

inline double dot(const EmbeddingVector& a, const EmbeddingVector& b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        acc += a.values[k] * b.values[k];
    }
    return acc;
}

}  // namespace

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dim() != b.dim()) {
        throw InputError("cosine_similarity: dimension mismatch (" + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()) + ")");
    }
    if (a.dim() == 0) {
        throw InputError("cosine_similarity: empty vectors");
    }
    double na = norm2(a);
    double nb = norm2(b);
    if (na == 0.0 || nb == 0.0) {
        throw InputError("cosine_similarity: zero-norm vector");
    }
    return clamp_unit(dot(a, b) / (na * nb));
}

namespace kernels {

std::vector<double> pairwise_cosine(const std::vector<EmbeddingVector>& vectors) {
    const std::size_t n = vectors.size();
    std::vector<double> sim(n * n, 1.0);
    if (n == 0) {
        return sim;
    }
    const std::vector<double> norms = norms_checked(vectors);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = clamp_unit(dot(vectors[i], vectors[j]) / (norms[i] * norms[j]));
            sim[i * n + j] = s;
            sim[j * n + i] = s;
        }
    }
    return sim;
}

namespace serial {

std::vector<double> pairwise_cosine(const std::vector<EmbeddingVector>& vectors) {
    const std::size_t n = vectors.size();
    std::vector<double> sim(n * n, 1.0);
    if (n == 0) {
        return sim;
    }
    const std::vector<double> norms = norms_checked(vectors);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = clamp_unit(dot(vectors[i], vectors[j]) / (norms[i] * norms[j]));
            sim[i * n + j] = s;
            sim[j * n + i] = s;
        }
    }
    return sim;
}

}  // namespace serial

}  // namespace kernels

}  // namespace scenebench
