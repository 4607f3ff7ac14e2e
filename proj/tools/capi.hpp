#pragma once

// RAII and exception glue over the public C API. The CLI never touches the
// C++ core directly.

#include <memory>
#include <stdexcept>
#include <string>

#include "gupbell/gupbell.h"

namespace gbcli {

class ApiError : public std::runtime_error {
 public:
  ApiError(gb_status status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  gb_status status() const noexcept { return status_; }

 private:
  gb_status status_;
};

inline void check(gb_status status) {
  if (status != GB_OK) {
    std::string msg = gb_status_string(status);
    const std::string detail = gb_last_error();
    if (!detail.empty()) msg += ": " + detail;
    throw ApiError(status, msg);
  }
}

struct ModelDeleter {
  void operator()(gb_model* p) const { gb_model_destroy(p); }
};
struct ScenarioDeleter {
  void operator()(gb_scenario* p) const { gb_scenario_destroy(p); }
};
struct ScanDeleter {
  void operator()(gb_scan* p) const { gb_scan_destroy(p); }
};
struct SweepDeleter {
  void operator()(gb_sweep* p) const { gb_sweep_destroy(p); }
};

using ModelPtr = std::unique_ptr<gb_model, ModelDeleter>;
using ScenarioPtr = std::unique_ptr<gb_scenario, ScenarioDeleter>;
using ScanPtr = std::unique_ptr<gb_scan, ScanDeleter>;
using SweepPtr = std::unique_ptr<gb_sweep, SweepDeleter>;

}  // namespace gbcli
