#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "berezin/berezin.hpp"
#include "berezin/hilbert.hpp"
#include "berezin/matrix.hpp"

namespace berezin {

/// {"rows": m, "cols": n, "re": [[...]], "im": [[...]]}; "im" may be omitted.
Matrix parse_operator(const std::string& json_text);
Matrix load_operator(const std::filesystem::path& path);
std::string operator_to_json(const Matrix& m);

/// One row per sample: lambda_re,lambda_im,sym_re,sym_im,abs. Finite
/// domains put the point index in lambda_re and 0 in lambda_im.
std::string symbol_csv(const BerezinSetSample& samples);

}  // namespace berezin
