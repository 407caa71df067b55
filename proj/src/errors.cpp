#include "sparsecap/errors.hpp"

namespace sparsecap {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::bad_magic: return "BadMagic";
    case Errc::truncated_file: return "TruncatedFile";
    case Errc::dim_overflow: return "DimOverflow";
    case Errc::io_failure: return "IoFailure";
    case Errc::unsupported_format: return "UnsupportedFormat";
    case Errc::bad_header: return "BadHeader";
    case Errc::parse_error: return "ParseError";
    case Errc::mixed_dims: return "MixedDims";
    case Errc::overlapping_split: return "OverlappingSplit";
    case Errc::count_mismatch: return "CountMismatch";
    case Errc::dim_mismatch: return "DimMismatch";
    case Errc::not_a_lightfield: return "NotALightfield";
    case Errc::shape_mismatch: return "ShapeMismatch";
    case Errc::bad_wavelet_length: return "BadWaveletLength";
    case Errc::too_few_samples: return "TooFewSamples";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::negative_energy: return "NegativeEnergy";
    case Errc::empty_input: return "EmptyInput";
    case Errc::grid_mismatch: return "GridMismatch";
    case Errc::bad_params: return "BadParams";
    case Errc::singular_subproblem: return "SingularSubproblem";
    }
    return "UnknownError";
}

} // namespace sparsecap
