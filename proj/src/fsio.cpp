#include "sparsecap/fsio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sparsecap/errors.hpp"

namespace sparsecap {

void atomic_write_file(const std::string& path, const std::string& bytes) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(Errc::io_failure, "cannot open '" + tmp + "' for writing");
        out.write(bytes.data(), std::streamsize(bytes.size()));
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            fail(Errc::io_failure, "short write to '" + tmp + "'");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        fail(Errc::io_failure, "cannot rename '" + tmp + "' to '" + path + "'");
    }
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_failure, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace sparsecap
