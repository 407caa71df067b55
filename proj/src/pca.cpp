#include "sparsecap/pca.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include <Eigen/Dense>

#include "sparsecap/binio.hpp"
#include "sparsecap/errors.hpp"
#include "sparsecap/fsio.hpp"

namespace sparsecap {
namespace {

constexpr char magic[4] = {'P', 'C', 'A', 'B'};
constexpr std::uint32_t format_version = 1;
constexpr std::uint32_t flag_rank_deficient = 1u;

// Largest-|entry| coordinate made positive; ties to the lowest index.
void fix_sign(double* comp, std::size_t n) {
    std::size_t pivot = 0;
    double best = std::abs(comp[0]);
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(comp[i]) > best) {
            best = std::abs(comp[i]);
            pivot = i;
        }
    if (comp[pivot] < 0.0)
        for (std::size_t i = 0; i < n; ++i) comp[i] = -comp[i];
}

} // namespace

PcaBasis train_pca(const std::vector<SignalTensor>& train, std::size_t n_components) {
    std::size_t S = train.size();
    if (S < 2) fail(Errc::too_few_samples, "need >= 2 training tensors, got " + std::to_string(S));
    const std::vector<std::size_t>& dims = train.front().dims;
    for (const SignalTensor& t : train) {
        validate(t);
        if (t.dims != dims)
            fail(Errc::dim_mismatch, "training tensor dims " + dims_to_string(t.dims) +
                                         " != " + dims_to_string(dims));
    }
    std::size_t N = checked_count(dims);
    if (n_components < 1 || n_components > std::min(N, S))
        throw std::invalid_argument("n_components must be in [1, min(N, n_samples)]");

    PcaBasis b;
    b.source_dims = dims;
    b.mean.assign(N, 0.0);
    for (const SignalTensor& t : train)
        for (std::size_t i = 0; i < N; ++i) b.mean[i] += t.values[i];
    for (double& m : b.mean) m /= double(S);

    Eigen::MatrixXd X(S, N);
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t i = 0; i < N; ++i) X(long(s), long(i)) = train[s].values[i] - b.mean[i];

    // Eigenpairs of the covariance X^T X / (S-1); the snapshot (Gram) route
    // solves the small S x S problem when samples are scarcer than pixels.
    Eigen::VectorXd eigs;            // ascending per Eigen convention
    Eigen::MatrixXd comps;           // columns are candidate components
    if (S < N) {
        Eigen::MatrixXd G = X * X.transpose() / double(S - 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
        eigs = es.eigenvalues();
        comps = X.transpose() * es.eigenvectors(); // unnormalized
    } else {
        Eigen::MatrixXd C = X.transpose() * X / double(S - 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
        eigs = es.eigenvalues();
        comps = es.eigenvectors();
    }

    double lambda_max = std::max(0.0, eigs(eigs.size() - 1));
    double tol = lambda_max * 1e-10;
    std::size_t usable = 0;
    for (long i = 0; i < eigs.size(); ++i)
        if (eigs(i) > tol) ++usable;
    std::size_t keep = std::min(n_components, usable);
    b.rank_deficient = keep < n_components;

    b.eigenvalues.resize(keep);
    b.components.resize(keep * N);
    for (std::size_t c = 0; c < keep; ++c) {
        long src = eigs.size() - 1 - long(c); // descending
        b.eigenvalues[c] = std::max(0.0, eigs(src));
        Eigen::VectorXd v = comps.col(src);
        v /= v.norm();
        for (std::size_t i = 0; i < N; ++i) b.components[c * N + i] = v(long(i));
        fix_sign(&b.components[c * N], N);
    }
    return b;
}

void save_pca(const std::string& path, const PcaBasis& b) {
    std::size_t N = b.dim(), k = b.n_components();
    std::string out;
    out.reserve(24 + 8 * b.source_dims.size() + 8 * (N + k * N + k));
    out.append(magic, 4);
    put_u32(out, format_version);
    put_u32(out, b.rank_deficient ? flag_rank_deficient : 0);
    put_u32(out, std::uint32_t(k));
    put_u32(out, std::uint32_t(b.source_dims.size()));
    for (std::size_t d : b.source_dims) put_u64(out, d);
    for (double v : b.mean) put_f64(out, v);
    for (double v : b.components) put_f64(out, v);
    for (double v : b.eigenvalues) put_f64(out, v);
    atomic_write_file(path, out);
}

PcaBasis load_pca(const std::string& path) {
    LeReader r(path);
    char m[4];
    r.bytes(m, 4);
    if (std::memcmp(m, magic, 4) != 0)
        fail(Errc::bad_magic, "'" + path + "' is not a PCA basis file");
    std::uint32_t version = r.u32();
    if (version != format_version)
        fail(Errc::bad_magic, "'" + path + "' has unsupported PCA container version " + std::to_string(version));
    std::uint32_t flags = r.u32();
    std::uint32_t k = r.u32();
    std::uint32_t ndim = r.u32();
    if (ndim == 0) fail(Errc::shape_mismatch, "'" + path + "' declares zero axes");

    PcaBasis b;
    b.rank_deficient = (flags & flag_rank_deficient) != 0;
    b.source_dims.resize(ndim);
    for (std::uint32_t a = 0; a < ndim; ++a) b.source_dims[a] = std::size_t(r.u64());
    std::size_t N = checked_count(b.source_dims);
    if (k > N) fail(Errc::shape_mismatch, "'" + path + "' declares more components than dimensions");

    b.mean.resize(N);
    r.f64_array(b.mean.data(), N);
    b.components.resize(std::size_t(k) * N);
    r.f64_array(b.components.data(), b.components.size());
    b.eigenvalues.resize(k);
    r.f64_array(b.eigenvalues.data(), k);
    if (!r.at_eof())
        fail(Errc::shape_mismatch, "'" + path + "' payload larger than header declares");
    return b;
}

} // namespace sparsecap
