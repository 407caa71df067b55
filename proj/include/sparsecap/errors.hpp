#ifndef SPARSECAP_ERRORS_HPP
#define SPARSECAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sparsecap {

enum class Errc {
    bad_magic,
    truncated_file,
    dim_overflow,
    io_failure,
    unsupported_format,
    bad_header,
    parse_error,
    mixed_dims,
    overlapping_split,
    count_mismatch,
    dim_mismatch,
    not_a_lightfield,
    shape_mismatch,
    bad_wavelet_length,
    too_few_samples,
    out_of_range,
    negative_energy,
    empty_input,
    grid_mismatch,
    bad_params,
    singular_subproblem,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace sparsecap

#endif
