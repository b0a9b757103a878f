#pragma once

// Plain-text matrix files:
//
//   2
//   0+0i 1+0i
//   1+0i 2.5-1i
//
// First token is n, followed by n*n complex entries in row-major order
// separated by whitespace. An entry is `re+imi` / `re-imi`; a bare real
// (`1.5`) is accepted as shorthand for `1.5+0i`. Lines starting with '#'
// are comments.

#include <cctype>
#include <complex>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "evoalg/core.hpp"
#include "evoalg/error.hpp"
#include "evoalg/format.hpp"

namespace evoalg {

/// Parses one `re+imi` token; nullopt if malformed.
inline std::optional<Scalar> parse_complex(std::string_view tok) {
  if (tok.empty()) return std::nullopt;
  if (tok.back() != 'i') {
    auto re = parse_double(tok);
    if (!re) return std::nullopt;
    return Scalar(*re, 0.0);
  }
  std::string_view body = tok.substr(0, tok.size() - 1);
  // The sign separating re and im is the last +/- not at the start and not
  // part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    const char c = body[k];
    if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return std::nullopt;
  auto re = parse_double(body.substr(0, split));
  std::string_view im_text = body.substr(split);
  if (im_text.front() == '+') im_text.remove_prefix(1);
  auto im = parse_double(im_text);
  if (!re || !im) return std::nullopt;
  return Scalar(*re, *im);
}

inline StructureMatrix parse_matrix(std::string_view text) {
  std::size_t pos = 0;
  auto next_token = [&]() -> std::pair<std::string_view, std::size_t> {
    for (;;) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos < text.size() && text[pos] == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    return {text.substr(start, pos - start), start};
  };

  auto [ntok, noff] = next_token();
  if (ntok.empty()) throw ParseError(ParseError::Kind::syntax, noff, "empty matrix file");
  auto nval = parse_double(ntok);
  if (!nval || *nval < 1 || *nval != static_cast<double>(static_cast<long>(*nval)) || *nval > 64)
    throw ParseError(ParseError::Kind::syntax, noff,
                     "expected matrix dimension, got '" + std::string(ntok) + "'");
  const auto n = static_cast<Eigen::Index>(*nval);
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      auto [tok, off] = next_token();
      if (tok.empty())
        throw ParseError(ParseError::Kind::syntax, off,
                         "expected " + std::to_string(n * n) + " entries, got " +
                             std::to_string(i * n + j));
      auto z = parse_complex(tok);
      if (!z)
        throw ParseError(ParseError::Kind::syntax, off,
                         "malformed complex number '" + std::string(tok) + "'");
      m(i, j) = *z;
    }
  auto [extra, eoff] = next_token();
  if (!extra.empty())
    throw ParseError(ParseError::Kind::syntax, eoff, "trailing content after matrix entries");
  return StructureMatrix(std::move(m));
}

inline StructureMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open matrix file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

inline std::string write_matrix(const Matrix& m) {
  std::string out = std::to_string(m.rows()) + "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += format_complex_file(m(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace evoalg
