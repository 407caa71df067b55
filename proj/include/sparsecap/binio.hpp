#ifndef SPARSECAP_BINIO_HPP
#define SPARSECAP_BINIO_HPP

#include <bit>
#include <cstdint>
#include <fstream>
#include <string>

#include "sparsecap/errors.hpp"

// Little-endian primitives shared by the binary containers.
namespace sparsecap {

inline void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

inline void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

inline void put_f64(std::string& out, double d) { put_u64(out, std::bit_cast<std::uint64_t>(d)); }

class LeReader {
public:
    explicit LeReader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
        if (!in_) fail(Errc::io_failure, "cannot open '" + path + "'");
    }

    void bytes(void* dst, std::size_t n) {
        in_.read(static_cast<char*>(dst), std::streamsize(n));
        if (std::size_t(in_.gcount()) != n)
            fail(Errc::truncated_file, "'" + path_ + "' ends mid-record");
    }

    std::uint32_t u32() {
        unsigned char b[4];
        bytes(b, 4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
        return v;
    }

    std::uint64_t u64() {
        unsigned char b[8];
        bytes(b, 8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
        return v;
    }

    double f64() { return std::bit_cast<double>(u64()); }

    void f64_array(double* dst, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) dst[i] = f64();
    }

    bool at_eof() { return in_.peek() == EOF; }

    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ifstream in_;
};

} // namespace sparsecap

#endif
