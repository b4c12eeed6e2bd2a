#pragma once

#include <string>

namespace aos {

/// 12-significant-digit rendering shared by every CSV writer and printed
/// record, locale-independent.
std::string num12(double value);

}  // namespace aos
