#pragma once

#include <stdexcept>
#include <string>

namespace dmt {

enum class errc {
  duplicate_value,
  unknown_vertex,
  invalid_complex,
  dimension_mismatch,
  vertex_has_no_child,
  not_critical,
  not_morse,
  missing_value,
  invalid_gvf,
  invalid_result,
  path_limit_exceeded,
  parse_error,
  io_error,
  invalid_argument,
  internal_error,
};

inline const char* to_string(errc c) {
  switch (c) {
    case errc::duplicate_value: return "duplicate_value";
    case errc::unknown_vertex: return "unknown_vertex";
    case errc::invalid_complex: return "invalid_complex";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::vertex_has_no_child: return "vertex_has_no_child";
    case errc::not_critical: return "not_critical";
    case errc::not_morse: return "not_morse";
    case errc::missing_value: return "missing_value";
    case errc::invalid_gvf: return "invalid_gvf";
    case errc::invalid_result: return "invalid_result";
    case errc::path_limit_exceeded: return "path_limit_exceeded";
    case errc::parse_error: return "parse_error";
    case errc::io_error: return "io_error";
    case errc::invalid_argument: return "invalid_argument";
    case errc::internal_error: return "internal_error";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

// Contract checks that must hold in release builds.
inline void require(bool cond, errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace dmt
