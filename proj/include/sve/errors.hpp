#pragma once

#include <stdexcept>
#include <string>

namespace sve {

/// Error categories used across the solver. Tests and the CLI dispatch on
/// the category, the message carries the details.
enum class errc {
    config,         ///< invalid configuration value or key
    parameter,      ///< physically inadmissible model parameter
    positivity,     ///< water height dropped below the configured floor
    inversion,      ///< entropy-variable inversion produced an inadmissible state
    degeneracy,     ///< coincident eigenvalues, eigenvector matrix not invertible
    hyperbolicity,  ///< characteristic cubic has complex roots
    path,           ///< integration path left the admissible set
    contract,       ///< caller-supplied input violated an interface contract
    numeric,        ///< non-finite values detected during time integration
    io              ///< file input/output failure
};

class solver_error : public std::runtime_error {
public:
    solver_error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
    throw solver_error(code, what);
}

}  // namespace sve
