#ifndef SPARSECAP_BASIS_HPP
#define SPARSECAP_BASIS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sparsecap/pca.hpp"
#include "sparsecap/tensor.hpp"

namespace sparsecap {

enum class Family { dct, dft, haar, db4, pca };

const char* family_name(Family f);

struct BasisSpec {
    Family family = Family::dct;
    std::shared_ptr<const PcaBasis> pca; // required iff family == pca
    std::optional<int> levels;           // wavelet level override (>= 1)
    std::string label;                   // CLI token, used in reports

    static BasisSpec make(Family f);
    static BasisSpec make_pca(std::shared_ptr<const PcaBasis> b, std::string label = "pca");
};

// CLI token: dct | dft | haar | db4 | pca:<path>.  pca loads the file.
BasisSpec parse_basis_token(const std::string& token);

// Transform output.  Real bases leave `im` empty; dft fills both halves.
// dims mirror the source (pca: single axis of length n_components).
struct CoefficientTensor {
    std::vector<std::size_t> dims;
    std::vector<double> re, im;
    BasisSpec basis;
    double source_energy = 0.0;   // ||x||^2
    double centered_energy = 0.0; // ||x - mean||^2 for pca, else == source_energy

    std::size_t size() const { return re.size(); }
    double magnitude_sq(std::size_t i) const {
        return im.empty() ? re[i] * re[i] : re[i] * re[i] + im[i] * im[i];
    }
};

// Progressive capture order.  Groups are singletons except for dft, where a
// conjugate bin pair is one unit of cost 2 (a complex measurement) and
// self-conjugate bins (all axes at 0 or Nyquist) cost 1.  Costs sum to the
// real dimension of the coefficient space.
struct ProgressiveOrdering {
    std::vector<std::vector<std::size_t>> members; // per group, coefficient indices
    std::vector<int> costs;                        // per group
    std::size_t coeff_count = 0;
};

CoefficientTensor forward(const BasisSpec& b, const SignalTensor& x);
SignalTensor inverse(const BasisSpec& b, const CoefficientTensor& s);
ProgressiveOrdering progressive_order(const BasisSpec& b, const std::vector<std::size_t>& dims);

// Max relative Parseval defect over seeded random tensors (pca measures
// against centered energy).
double orthonormality_check(const BasisSpec& b, const std::vector<std::size_t>& dims,
                            int trials, std::uint64_t seed);

// Effective wavelet depth for a shape (levels override or the default rule).
int wavelet_levels_for(const BasisSpec& b, const std::vector<std::size_t>& dims);

} // namespace sparsecap

#endif
