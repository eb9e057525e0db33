#pragma once

#include <string>
#include <vector>

namespace pdaproc::repro {

// Reproduction targets for the worked examples; each renders a deterministic
// text report compared against the golden files in repro/golden.
std::vector<std::string> ids();
std::string render(const std::string& id);

}  // namespace pdaproc::repro
