#pragma once

#include <stdexcept>
#include <string>

namespace nullcount {

// Every failure mode surfaced by the library. The CLI maps these to exit
// codes, so the kind must describe what went wrong, not where.
enum class errc {
  parse,        // malformed database, query, graph, or CNF text
  domain,       // structurally valid input violating a domain invariant
  setting,      // operation applied under the wrong table/domain setting
  capability,   // instance outside what the requested algorithm supports
  resource,     // a configured cap or budget was exhausted
  verification, // a self-check or identity check failed
};

const char* errc_name(errc k);

class error : public std::runtime_error {
 public:
  error(errc kind, std::string message);
  error(errc kind, std::string message, int line, int column);

  errc kind() const { return kind_; }
  // 0 when the error has no source position.
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  errc kind_;
  int line_ = 0;
  int column_ = 0;
};

[[noreturn]] void fail(errc kind, const std::string& message);
[[noreturn]] void fail_at(errc kind, const std::string& message, int line,
                          int column);

}  // namespace nullcount
