#ifndef SPARSECAP_PCA_HPP
#define SPARSECAP_PCA_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "sparsecap/tensor.hpp"

namespace sparsecap {

// Learned orthonormal basis: sample mean plus eigenvalue-descending
// principal components of the training covariance.
struct PcaBasis {
    std::vector<std::size_t> source_dims;
    std::vector<double> mean;        // length N
    std::vector<double> components;  // n_components x N, row-major
    std::vector<double> eigenvalues; // non-increasing, >= 0
    bool rank_deficient = false;     // requested components exceeded data rank

    std::size_t n_components() const { return eigenvalues.size(); }
    std::size_t dim() const { return mean.size(); }
};

// Covariance uses the unbiased divisor (n_samples - 1).  When
// n_samples < N the eigenproblem is solved on the Gram (snapshot) matrix.
// Sign convention: each component's largest-|entry| coordinate is positive
// (ties: lowest index).  If the data rank is below n_components, returns
// rank-many components with rank_deficient set.
PcaBasis train_pca(const std::vector<SignalTensor>& train, std::size_t n_components);

void save_pca(const std::string& path, const PcaBasis& b);
PcaBasis load_pca(const std::string& path);

} // namespace sparsecap

#endif
