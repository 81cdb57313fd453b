#pragma once

#include <stdexcept>
#include <string>

namespace coexsim {

enum class Capability { kLteOnly, kWifiOnly, kDual };

inline bool has_lte(Capability c) { return c != Capability::kWifiOnly; }
inline bool has_wifi(Capability c) { return c != Capability::kLteOnly; }

inline const char* to_string(Capability c) {
  switch (c) {
    case Capability::kLteOnly: return "LteOnly";
    case Capability::kWifiOnly: return "WifiOnly";
    case Capability::kDual: return "Dual";
  }
  throw std::logic_error("bad capability");
}

}  // namespace coexsim
