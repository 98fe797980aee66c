#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pbursts/pareto.hpp"

namespace pbursts::tools {

// Static scatter of a two-criterion frontier (connected points) over
// optional baseline samples (grey points). Purely a consumer of already
// written scores; never feeds back into any numeric output.
void write_scatter_svg(const std::filesystem::path& path,
                       const std::vector<ScoreVector>& frontier,
                       const std::vector<ScoreVector>& baseline,
                       const std::string& x_label, const std::string& y_label);

}  // namespace pbursts::tools
