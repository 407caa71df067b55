#include "sparsecap/ndf.hpp"

#include <cstring>

#include "sparsecap/binio.hpp"
#include "sparsecap/errors.hpp"
#include "sparsecap/fsio.hpp"

namespace sparsecap {
namespace {

constexpr char magic[4] = {'N', 'D', 'S', 'F'};
constexpr std::uint32_t format_version = 1;

std::vector<std::size_t> read_header(LeReader& r) {
    char m[4];
    r.bytes(m, 4);
    if (std::memcmp(m, magic, 4) != 0)
        fail(Errc::bad_magic, "'" + r.path() + "' is not an NDF file");
    std::uint32_t version = r.u32();
    if (version != format_version)
        fail(Errc::bad_magic, "'" + r.path() + "' has unsupported NDF version " + std::to_string(version));
    std::uint32_t ndim = r.u32();
    if (ndim == 0) fail(Errc::bad_magic, "'" + r.path() + "' declares zero axes");
    std::vector<std::size_t> dims(ndim);
    for (std::uint32_t a = 0; a < ndim; ++a) {
        dims[a] = std::size_t(r.u64());
        if (dims[a] == 0) fail(Errc::bad_magic, "'" + r.path() + "' declares a zero-extent axis");
    }
    checked_count(dims); // DimOverflow before any allocation
    return dims;
}

} // namespace

SignalTensor read_ndf(const std::string& path) {
    LeReader r(path);
    SignalTensor t;
    t.dims = read_header(r);
    std::size_t count = checked_count(t.dims);
    t.values.resize(count);
    r.f64_array(t.values.data(), count);
    t.kind = Kind::generic;
    validate(t);
    return t;
}

void write_ndf(const std::string& path, const SignalTensor& t) {
    validate(t);
    std::string out;
    out.reserve(12 + 8 * t.dims.size() + 8 * t.values.size());
    out.append(magic, 4);
    put_u32(out, format_version);
    put_u32(out, std::uint32_t(t.dims.size()));
    for (std::size_t d : t.dims) put_u64(out, d);
    for (double v : t.values) put_f64(out, v);
    atomic_write_file(path, out);
}

std::vector<std::size_t> read_ndf_dims(const std::string& path) {
    LeReader r(path);
    return read_header(r);
}

} // namespace sparsecap
