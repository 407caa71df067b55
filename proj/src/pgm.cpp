#include "sparsecap/pgm.hpp"

#include <cctype>
#include <fstream>

#include "sparsecap/errors.hpp"

namespace sparsecap {
namespace {

// Reads the next header integer, skipping whitespace and '#' comments.
long header_int(std::istream& in, const std::string& path) {
    int c = in.get();
    while (c != EOF && (std::isspace(c) || c == '#')) {
        if (c == '#')
            while (c != EOF && c != '\n') c = in.get();
        c = in.get();
    }
    if (c == EOF || !std::isdigit(c))
        fail(Errc::bad_header, "'" + path + "': malformed PGM header");
    long v = 0;
    while (c != EOF && std::isdigit(c)) {
        v = v * 10 + (c - '0');
        if (v > 1 << 30) fail(Errc::bad_header, "'" + path + "': header value out of range");
        c = in.get();
    }
    if (c != EOF) in.unget();
    return v;
}

} // namespace

SignalTensor read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_failure, "cannot open '" + path + "'");

    char m0 = char(in.get()), m1 = char(in.get());
    if (m0 != 'P')
        fail(Errc::bad_header, "'" + path + "' is not a PGM file");
    if (m1 == '2' || m1 == '3' || m1 == '6')
        fail(Errc::unsupported_format,
             "'" + path + "': only binary grayscale (P5) is supported, got P" + std::string(1, m1));
    if (m1 != '5')
        fail(Errc::bad_header, "'" + path + "' is not a PGM file");

    long width = header_int(in, path);
    long height = header_int(in, path);
    long maxval = header_int(in, path);
    if (width < 1 || height < 1)
        fail(Errc::bad_header, "'" + path + "': non-positive image size");
    if (maxval < 1 || maxval > 65535)
        fail(Errc::bad_header, "'" + path + "': maxval " + std::to_string(maxval) + " out of range");
    int sep = in.get();
    if (sep == EOF || !std::isspace(sep))
        fail(Errc::bad_header, "'" + path + "': missing separator before pixel data");

    std::size_t count = std::size_t(width) * std::size_t(height);
    std::size_t bpp = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(count * bpp);
    in.read(reinterpret_cast<char*>(raw.data()), std::streamsize(raw.size()));
    if (std::size_t(in.gcount()) != raw.size())
        fail(Errc::bad_header, "'" + path + "': pixel data shorter than header promises");

    SignalTensor t;
    t.dims = {std::size_t(height), std::size_t(width)};
    t.values.resize(count);
    double scale = 1.0 / double(maxval);
    for (std::size_t i = 0; i < count; ++i) {
        unsigned sample = bpp == 1 ? raw[i] : unsigned(raw[2 * i]) << 8 | raw[2 * i + 1];
        t.values[i] = double(sample) * scale;
    }
    t.kind = Kind::image;
    return t;
}

} // namespace sparsecap
