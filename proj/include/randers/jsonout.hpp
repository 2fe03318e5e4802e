#pragma once
// Deterministic document output. Keys keep insertion order, floating-point
// numbers are printed with 17 significant digits so every double round-trips
// exactly, and files are written via a temp-file rename, so a rerun with the
// same configuration is byte-identical and a crashed run never leaves a
// half-written document behind.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "randers/error.hpp"

namespace randers {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string json_number(double v) {
  if (!std::isfinite(v)) throw Error("non-finite number in document output");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void append_escaped(std::string& out, std::string_view s) {
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

inline bool scalar_only(const Json& arr) {
  for (const Json& v : arr)
    if (v.is_structured()) return false;
  return true;
}

inline void dump_value(std::string& out, const Json& v, int depth) {
  const std::string pad(static_cast<size_t>(depth) * 2, ' ');
  const std::string pad_in(static_cast<size_t>(depth + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        append_escaped(out, it.key());
        out += ": ";
        dump_value(out, it.value(), depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      if (scalar_only(v)) {  // short vectors stay on one line
        out += "[";
        bool first = true;
        for (const Json& e : v) {
          if (!first) out += ", ";
          first = false;
          dump_value(out, e, depth);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const Json& e : v) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_value(out, e, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::string:
      append_escaped(out, v.get_ref<const std::string&>());
      return;
    case Json::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      return;
    case Json::value_t::number_integer:
      out += std::to_string(v.get<std::int64_t>());
      return;
    case Json::value_t::number_unsigned:
      out += std::to_string(v.get<std::uint64_t>());
      return;
    case Json::value_t::number_float:
      out += json_number(v.get<double>());
      return;
    default:
      out += "null";
      return;
  }
}

}  // namespace detail

inline std::string dump_document(const Json& doc) {
  std::string out;
  detail::dump_value(out, doc, 0);
  out += "\n";
  return out;
}

/// Single atomic write: the target path either keeps its old content or holds
/// the complete new document, never a prefix.
inline void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open output file: " + tmp);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    f.flush();
    if (!f) throw Error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error("cannot move output into place: " + path);
}

}  // namespace randers
