#include "nullcount/errors.h"

namespace nullcount {

const char* errc_name(errc k) {
  switch (k) {
    case errc::parse:
      return "parse";
    case errc::domain:
      return "domain";
    case errc::setting:
      return "setting";
    case errc::capability:
      return "capability";
    case errc::resource:
      return "resource";
    case errc::verification:
      return "verification";
  }
  return "unknown";
}

static std::string decorate(errc kind, const std::string& message, int line,
                            int column) {
  std::string out = errc_name(kind);
  out += " error";
  if (line > 0) {
    out += " at line " + std::to_string(line) + ", column " +
           std::to_string(column);
  }
  out += ": ";
  out += message;
  return out;
}

error::error(errc kind, std::string message)
    : std::runtime_error(decorate(kind, message, 0, 0)), kind_(kind) {}

error::error(errc kind, std::string message, int line, int column)
    : std::runtime_error(decorate(kind, message, line, column)),
      kind_(kind),
      line_(line),
      column_(column) {}

void fail(errc kind, const std::string& message) {
  throw error(kind, message);
}

void fail_at(errc kind, const std::string& message, int line, int column) {
  throw error(kind, message, line, column);
}

}  // namespace nullcount
