#pragma once
//
// Parsing and output plumbing shared by the CLI subcommands.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vincount/core.hpp"

namespace vincount::cli {

using nlohmann::ordered_json;

// Whole-string integer parse; trailing garbage is an error.
inline Int strict_int(const std::string& text) {
  std::size_t used = 0;
  Int v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("not an integer: " + text);
  }
  if (used != text.size()) throw std::invalid_argument("not an integer: " + text);
  return v;
}

// "{a,b,c}" or "[lo..hi]".
inline IntSet parse_set(const std::string& text) {
  const auto fail = [&]() -> IntSet {
    throw std::invalid_argument("set literal must look like {1,2,3} or [-3..3]: got " + text);
  };
  if (text.size() < 2) return fail();
  if (text.front() == '[' && text.back() == ']') {
    const auto dots = text.find("..");
    if (dots == std::string::npos) return fail();
    const Int lo = strict_int(text.substr(1, dots - 1));
    const Int hi = strict_int(text.substr(dots + 2, text.size() - dots - 3));
    return IntSet::interval(lo, hi);
  }
  if (text.front() == '{' && text.back() == '}') {
    std::vector<Int> vals;
    std::string body = text.substr(1, text.size() - 2);
    std::size_t pos = 0;
    while (pos < body.size()) {
      const auto comma = body.find(',', pos);
      const auto piece = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      vals.push_back(strict_int(piece));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (vals.empty()) return fail();
    return IntSet(std::move(vals));
  }
  return fail();
}

// Base-10 integer from a digit string. The cpp_int string constructor treats
// a leading zero as an octal prefix, which would mangle decimals like "0.25".
inline Count count_base10(const std::string& text) {
  std::string t = text;
  bool negative = false;
  if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
    negative = t[0] == '-';
    t.erase(0, 1);
  }
  if (t.empty()) throw std::invalid_argument("not an integer: " + text);
  Count v = 0;
  for (char ch : t) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("not an integer: " + text);
    v = v * 10 + (ch - '0');
  }
  return negative ? -v : v;
}

// "p/q", "3", or "0.25", parsed exactly.
inline Rational parse_rational(const std::string& text) {
  const auto fail = [&]() -> Rational {
    throw std::invalid_argument("weight must be an integer, p/q, or a decimal: got " + text);
  };
  if (text.empty()) return fail();
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      const Count num = count_base10(text.substr(0, slash));
      const Count den = count_base10(text.substr(slash + 1));
      if (den == 0) return fail();
      return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
      const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      const std::size_t places = text.size() - dot - 1;
      if (places == 0) return fail();
      Count den(1);
      for (std::size_t i = 0; i < places; ++i) den *= 10;
      return Rational(count_base10(digits), den);
    }
    return Rational(count_base10(text));
  } catch (const std::invalid_argument&) {
    return fail();
  }
}

inline std::vector<Int> parse_int_list(const std::string& text) {
  std::vector<Int> vals;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto piece = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    vals.push_back(strict_int(piece));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return vals;
}

// Lossless double rendering for text output.
inline std::string double_str(double v) {
  return ordered_json(v).dump();
}

// "key: value" lines, depth-first; arrays inline.
inline void render_text(const ordered_json& j, std::ostream& os, const std::string& prefix = "") {
  for (const auto& [key, val] : j.items()) {
    if (val.is_object()) {
      render_text(val, os, prefix + key + ".");
    } else {
      os << prefix << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump())
         << "\n";
    }
  }
}

struct OutputOpts {
  std::string format = "json";
  std::string path;  // empty: stdout
};

inline void emit(const ordered_json& j, const OutputOpts& opts, const std::string& csv = "") {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!opts.path.empty()) {
    file.open(opts.path);
    if (!file) throw std::invalid_argument("cannot open output file " + opts.path);
    os = &file;
  }
  if (opts.format == "json") {
    *os << j.dump(2) << "\n";
  } else if (opts.format == "text") {
    render_text(j, *os);
  } else if (opts.format == "csv") {
    if (csv.empty()) throw std::invalid_argument("csv output is only available for scan results");
    *os << csv;
  } else {
    throw std::invalid_argument("unknown format " + opts.format);
  }
}

}  // namespace vincount::cli
