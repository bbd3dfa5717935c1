#pragma once

#include <string>

#include "bops/kernel/ast.hpp"

namespace bops::kernel {

/// Parses kernel-language source into a typed program. `origin` names the
/// input in diagnostics (a path, or "<string>" for in-memory sources).
/// Throws ParseError.
KernelProgram parse(const std::string& source, const std::string& origin = "<string>");

/// Reads and parses a kernel source file.
KernelProgram parse_file(const std::string& path);

}  // namespace bops::kernel
