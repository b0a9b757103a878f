#pragma once

// Locale-independent number formatting and parsing shared by the file
// formats (matrix files, CSV, SVG, reports).

#include <charconv>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace evoalg {

/// Shortest round-trip decimal representation; "-0" is printed as "0".
inline std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

/// Fixed number of significant digits, for human-facing reports.
inline std::string format_double(double v, int precision) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [end, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

/// `re+imi` form used by the matrix file format.
inline std::string format_complex_file(std::complex<double> z) {
  std::string out = format_double(z.real());
  double im = z.imag();
  if (im < 0) {
    out += "-" + format_double(-im) + "i";
  } else {
    out += "+" + format_double(im) + "i";
  }
  return out;
}

/// Compact form for reports: "0.5", "-2i", "0.1+0.3i".
inline std::string format_complex(std::complex<double> z, int precision = 0) {
  auto fmt = [precision](double v) {
    return precision > 0 ? format_double(v, precision) : format_double(v);
  };
  const double re = z.real();
  const double im = z.imag();
  if (im == 0.0) return fmt(re);
  if (re == 0.0) return fmt(im) + "i";
  return fmt(re) + (im < 0 ? "-" : "+") + fmt(std::abs(im)) + "i";
}

/// Parses the whole of `text` as a double (no leading '+', no whitespace).
inline std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

}  // namespace evoalg
