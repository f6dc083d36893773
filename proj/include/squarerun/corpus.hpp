#pragma once

// Test and benchmark strings, and the token file format.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "squarerun/oracle.hpp"

namespace squarerun {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// First k symbols of the square-free ternary word: gaps between consecutive
/// zeros of the Prouhet-Thue-Morse sequence, minus one.
inline std::vector<Token> ternary_thue_morse(Index k) {
  if (k < 1) throw InputError("ternary_thue_morse: k must be positive");
  auto ptm = [](std::uint64_t i) { return std::popcount(i) & 1; };
  std::vector<Token> out;
  out.reserve(static_cast<std::size_t>(k));
  std::uint64_t prev = 0;  // ptm(0) = 0
  for (std::uint64_t i = 1; static_cast<Index>(out.size()) < k; ++i) {
    if (ptm(i) == 0) {
      out.push_back(static_cast<Token>(i - prev - 1));
      prev = i;
    }
  }
  return out;
}

/// i.i.d. tokens in [0, sigma).  Reduction of the raw 64-bit draw keeps the
/// output identical across standard library implementations.
inline std::vector<Token> random_string(Index n, Index sigma, std::uint64_t seed) {
  if (n < 1) throw InputError("random_string: n must be positive");
  if (sigma < 1) throw InputError("random_string: sigma must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Token> out(static_cast<std::size_t>(n));
  for (auto& t : out) t = static_cast<Token>(rng() % static_cast<std::uint64_t>(sigma));
  return out;
}

inline std::vector<Token> unary(Index n) {
  if (n < 1) throw InputError("unary: n must be positive");
  return std::vector<Token>(static_cast<std::size_t>(n), 0);
}

/// (0 1 ... period-1) repeated and cut to length n.
inline std::vector<Token> periodic(Index n, Index period) {
  if (n < 1 || period < 1) throw InputError("periodic: n and period must be positive");
  std::vector<Token> out(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i % period;
  return out;
}

/// Prefix of the Fibonacci word 0 1 0 0 1 0 1 0 ...
inline std::vector<Token> fibonacci_word(Index n) {
  if (n < 1) throw InputError("fibonacci_word: n must be positive");
  std::vector<Token> a{0};
  std::vector<Token> b{0, 1};
  while (static_cast<Index>(b.size()) < n) {
    std::vector<Token> c = b;
    c.insert(c.end(), a.begin(), a.end());
    a = std::move(b);
    b = std::move(c);
  }
  b.resize(static_cast<std::size_t>(n));
  return b;
}

/// Square-free string over sigma >= 8 symbols (sigma divisible by 4): blocks
/// of length sigma/4 that start with the next ternary Thue-Morse symbol and
/// continue with distinct symbols from {3, ..., sigma-1}.
inline std::vector<Token> square_free_blocks(Index n, Index sigma, std::uint64_t seed) {
  if (n < 1) throw InputError("square_free_blocks: n must be positive");
  if (sigma < 8 || sigma % 4 != 0) {
    throw InputError("square_free_blocks: sigma must be >= 8 and divisible by 4");
  }
  const Index q = sigma / 4;
  const auto tm = ternary_thue_morse((n + q - 1) / q);
  std::mt19937_64 rng(seed);
  std::vector<Token> pool;
  for (Token c = 3; c < sigma; ++c) pool.push_back(c);
  std::vector<Token> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::size_t k = 0; static_cast<Index>(out.size()) < n; ++k) {
    out.push_back(tm[k]);
    std::shuffle(pool.begin(), pool.end(), rng);
    for (Index j = 0; j + 1 < q && static_cast<Index>(out.size()) < n; ++j) {
      out.push_back(pool[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

inline Index distinct_count(const std::vector<Token>& tokens) {
  std::vector<Token> t = tokens;
  std::sort(t.begin(), t.end());
  return static_cast<Index>(std::unique(t.begin(), t.end()) - t.begin());
}

inline std::vector<Token> bytes_to_tokens(const std::string& bytes) {
  std::vector<Token> out;
  out.reserve(bytes.size());
  for (unsigned char c : bytes) out.push_back(static_cast<Token>(c));
  return out;
}

/// Whitespace-separated decimal tokens.
inline std::vector<Token> parse_tokens(std::istream& in) {
  std::vector<Token> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string field;
    while (fields >> field) {
      std::size_t used = 0;
      Token value = 0;
      try {
        value = std::stoll(field, &used);
      } catch (const std::exception&) {
        throw ParseError("malformed token '" + field + "'", lineno);
      }
      if (used != field.size()) throw ParseError("malformed token '" + field + "'", lineno);
      out.push_back(value);
    }
  }
  if (out.empty()) throw ParseError("no tokens", lineno == 0 ? 1 : lineno);
  return out;
}

/// Reads a token file; in byte mode every byte is one token (its value).
inline std::vector<Token> read_tokens(const std::string& path, bool bytes = false) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  if (!bytes) return parse_tokens(in);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.empty()) throw ParseError("empty byte file", 1);
  return bytes_to_tokens(data);
}

inline void format_tokens(std::ostream& out, const std::vector<Token>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out << ' ';
    out << tokens[i];
  }
  out << '\n';
}

inline void write_tokens(const std::string& path, const std::vector<Token>& tokens) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  format_tokens(out, tokens);
}

}  // namespace squarerun
