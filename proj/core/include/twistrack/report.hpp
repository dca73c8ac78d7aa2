#ifndef TWISTRACK_REPORT_HPP
#define TWISTRACK_REPORT_HPP

#include <chrono>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

namespace twr {

constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// One JSON-lines record. Records are self-contained: re-running the recorded
// command reproduces everything except `timing_ms`.
class Record {
 public:
  Record(std::string command, Json inputs) {
    j_["tool_version"] = kToolVersion;
    j_["command"] = std::move(command);
    j_["inputs"] = std::move(inputs);
    start_ = std::chrono::steady_clock::now();
  }
  void set(const std::string& key, Json v) { j_[key] = std::move(v); }
  void emit(std::ostream& os) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start_)
                  .count();
    j_["timing_ms"] = ms;
    os << j_.dump() << "\n";
  }

 private:
  Json j_ = Json::object();
  std::chrono::steady_clock::time_point start_;
};

}  // namespace twr

#endif
