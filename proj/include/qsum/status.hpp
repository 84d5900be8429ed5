#pragma once

#include <string>

namespace qsum {

enum class SearchStatus { exact, budget_exceeded };

inline const char* to_string(SearchStatus s) { return s == SearchStatus::exact ? "exact" : "budget_exceeded"; }

}  // namespace qsum
