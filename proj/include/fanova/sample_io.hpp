#pragma once

#include "fanova/sample.hpp"

#include <string>

namespace fanova {

enum class SampleFormat { csv, json };

// CSV layout: header `group,<t1>,<t2>,...` with strictly increasing times,
// then one row per curve. JSON layout:
//   { "grid": [..], "groups": [{"label": "..", "curves": [[..],..]}, ..] }
// Group order follows first appearance. Values are written with 17
// significant digits so save/load round-trips bit-exactly.
FunctionalSample load_sample(const std::string& path, SampleFormat format);
void save_sample(const FunctionalSample& s, const std::string& path, SampleFormat format);

// Picks the format from the file extension (.json -> json, else csv).
SampleFormat format_from_path(const std::string& path);

} // namespace fanova
