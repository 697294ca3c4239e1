#pragma once

// Text grammar for periodic waveforms:
//
//   waveform := name '(' [ arg { ',' arg } ] ')'
//   arg      := key '=' ( number | '[' [ number { ',' number } ] ']' | path )
//   number   := [ '+' | '-' ] decimal [ '/' decimal ]
//
// names: cos, triangle, square, fourier, samples
// keys:  period, amp, phase, a0, a, b, file
//
// Finite decimals and p/q literals are kept as exact rationals so that
// `period=1/3` participates in the lcm lift.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gluskabi/errors.hpp"
#include "gluskabi/rational.hpp"
#include "gluskabi/signal.hpp"

namespace gluskabi::cli {

class ParseError : public Error {
public:
  ParseError(std::string_view text, std::size_t position, std::string expected)
  : Error(format(text, position, expected)), position_{position}, expected_{std::move(expected)}
  {}

  std::size_t position() const noexcept { return position_; }
  const std::string & expected() const noexcept { return expected_; }

private:
  static std::string format(std::string_view text, std::size_t pos, const std::string & expected)
  {
    std::ostringstream os;
    os << "parse error at position " << pos << ": expected " << expected << "\n  " << text << "\n  "
       << std::string(pos, ' ') << '^';
    return os.str();
  }

  std::size_t position_;
  std::string expected_;
};

/// A parsed numeric literal with its exact rational form when one exists.
struct Number
{
  double value{0.0};
  std::optional<std::pair<std::int64_t, std::int64_t>> exact;
};

namespace detail {

class Cursor
{
public:
  explicit Cursor(std::string_view text)
  : text_{text}
  {}

  std::string_view text() const noexcept { return text_; }
  std::size_t pos() const noexcept { return pos_; }
  bool done() { skip_ws(); return pos_ >= text_.size(); }

  char peek()
  {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c)
  {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c)
  {
    if (!accept(c)) {
      fail(std::string("'") + c + "'");
    }
  }

  std::string identifier()
  {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
      (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
    {
      ++pos_;
    }
    if (start == pos_ || std::isdigit(static_cast<unsigned char>(text_[start]))) {
      pos_ = start;
      fail("identifier");
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Number number()
  {
    skip_ws();
    const std::size_t start = pos_;
    auto [num, num_exact] = decimal();
    if (accept('/')) {
      skip_ws();
      const std::size_t den_pos = pos_;
      auto [den, den_exact] = unsigned_decimal();
      if (den == 0.0) {
        pos_ = den_pos;
        fail("non-zero denominator");
      }
      Number out{num / den, std::nullopt};
      if (num_exact && den_exact) {
        out.exact = divide(*num_exact, *den_exact);
      }
      return out;
    }
    if (!std::isfinite(num)) {
      pos_ = start;
      fail("finite number");
    }
    return {num, num_exact};
  }

  /// Quoted string or bare run of characters up to ',' or ')'.
  std::string path()
  {
    skip_ws();
    if (accept('"')) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        ++pos_;
      }
      if (pos_ >= text_.size()) {
        fail("closing '\"'");
      }
      std::string out(text_.substr(start, pos_ - start));
      ++pos_;
      return out;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')') {
      ++pos_;
    }
    std::string out(text_.substr(start, pos_ - start));
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) {
      out.pop_back();
    }
    if (out.empty()) {
      pos_ = start;
      fail("file path");
    }
    return out;
  }

  [[noreturn]] void fail(const std::string & expected) const
  {
    throw ParseError(text_, pos_, expected);
  }

  void seek(std::size_t p) noexcept { pos_ = p; }

private:
  using Exact = std::optional<std::pair<std::int64_t, std::int64_t>>;

  void skip_ws()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::pair<double, Exact> decimal()
  {
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    auto [v, e] = unsigned_decimal();
    if (negative) {
      v = -v;
      if (e) {
        e->first = -e->first;
      }
    }
    return {v, e};
  }

  std::pair<double, Exact> unsigned_decimal()
  {
    const std::size_t start = pos_;
    std::int64_t mantissa = 0;
    std::int64_t scale = 1;
    bool exact = true;
    bool digits = false;
    bool fraction = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits = true;
        if (mantissa > (INT64_MAX - 9) / 10 || (fraction && scale > INT64_MAX / 10)) {
          exact = false;
        } else {
          mantissa = mantissa * 10 + (c - '0');
          if (fraction) {
            scale *= 10;
          }
        }
        ++pos_;
      } else if (c == '.' && !fraction) {
        fraction = true;
        ++pos_;
      } else {
        break;
      }
    }
    if (!digits) {
      pos_ = start;
      fail("number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      exact = false;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
        ++pos_;
      }
      const std::size_t exp_start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      if (exp_start == pos_) {
        fail("exponent digits");
      }
    }
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc{} || end != text_.data() + pos_ || !std::isfinite(v)) {
      pos_ = start;
      fail("finite number");
    }
    if (!exact) {
      return {v, std::nullopt};
    }
    return {v, std::pair{mantissa, scale}};
  }

  static Exact divide(std::pair<std::int64_t, std::int64_t> n, std::pair<std::int64_t, std::int64_t> d)
  {
    // (n.first / n.second) / (d.first / d.second)
    const auto g1 = std::gcd(n.first, d.first);
    const auto g2 = std::gcd(n.second, d.second);
    const std::int64_t p = n.first / (g1 == 0 ? 1 : g1);
    const std::int64_t q = d.first / (g1 == 0 ? 1 : g1);
    const std::int64_t r = d.second / g2;
    const std::int64_t s = n.second / g2;
    if (q == 0 || (r != 0 && std::abs(p) > INT64_MAX / r) || std::abs(q) > INT64_MAX / s) {
      return std::nullopt;
    }
    return std::pair{p * r, q * s};
  }

  std::string_view text_;
  std::size_t pos_{0};
};

struct Arg
{
  std::size_t position{0};
  std::optional<Number> number;
  std::vector<double> list;
  bool is_list{false};
  std::string path;
};

inline std::vector<std::pair<double, double>> read_sample_file(const std::filesystem::path & file)
{
  std::ifstream in(file);
  if (!in) {
    throw DomainError("cannot open sample file '" + file.string() + "'");
  }
  std::vector<std::pair<double, double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.find_first_not_of(" \t") == std::string::npos) {
      continue;
    }
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) {
        throw std::invalid_argument("missing comma");
      }
      std::size_t used = 0;
      const double phase = std::stod(line.substr(0, comma), &used);
      const double value = std::stod(line.substr(comma + 1));
      rows.emplace_back(phase, value);
    } catch (const std::exception &) {
      if (lineno == 1) {
        continue;  // header row
      }
      throw DomainError(
        "sample file '" + file.string() + "' line " + std::to_string(lineno) +
        ": expected 'phase,value'");
    }
  }
  return rows;
}

}  // namespace detail

/// Parse a standalone number literal ("2.5", "-1/3").
inline Number parse_number(std::string_view text)
{
  detail::Cursor cur(text);
  const auto n = cur.number();
  if (!cur.done()) {
    cur.fail("end of number");
  }
  return n;
}

/// Parse a waveform description; relative sample-file paths resolve against `base_dir`.
inline PeriodicTrajectory parse_waveform(
  std::string_view text, const std::filesystem::path & base_dir = {})
{
  static const std::map<std::string, std::set<std::string>> kKeys{
    {"cos", {"period", "amp", "phase"}},
    {"triangle", {"period", "amp"}},
    {"square", {"period", "amp"}},
    {"fourier", {"period", "a0", "a", "b"}},
    {"samples", {"period", "file"}},
  };

  detail::Cursor cur(text);
  const std::size_t name_pos = (cur.peek(), cur.pos());
  const std::string name = cur.identifier();
  const auto spec = kKeys.find(name);
  if (spec == kKeys.end()) {
    cur.seek(name_pos);
    cur.fail("waveform name (cos, triangle, square, fourier, samples)");
  }
  const auto & allowed = spec->second;

  std::map<std::string, detail::Arg> args;
  cur.expect('(');
  if (!cur.accept(')')) {
    do {
      const std::size_t key_pos = (cur.peek(), cur.pos());
      const std::string key = cur.identifier();
      if (!allowed.count(key)) {
        std::string keys;
        for (const auto & k : allowed) {
          keys += (keys.empty() ? "" : ", ") + k;
        }
        cur.seek(key_pos);
        cur.fail("key for " + name + " (" + keys + ")");
      }
      if (args.count(key)) {
        cur.seek(key_pos);
        cur.fail("each key at most once ('" + key + "' repeated)");
      }
      cur.expect('=');
      detail::Arg arg;
      arg.position = (cur.peek(), cur.pos());
      if (key == "file") {
        arg.path = cur.path();
      } else if (key == "a" || key == "b") {
        cur.expect('[');
        arg.is_list = true;
        if (!cur.accept(']')) {
          do {
            arg.list.push_back(cur.number().value);
          } while (cur.accept(','));
          cur.expect(']');
        }
      } else {
        arg.number = cur.number();
      }
      args.emplace(key, std::move(arg));
    } while (cur.accept(','));
    cur.expect(')');
  }
  if (!cur.done()) {
    cur.fail("end of input");
  }

  const auto number_or = [&](const std::string & key, double fallback) {
      const auto it = args.find(key);
      return it == args.end() ? fallback : it->second.number->value;
    };
  const auto list_or_empty = [&](const std::string & key) {
      const auto it = args.find(key);
      return it == args.end() ? std::vector<double>{} : it->second.list;
    };

  waveform::Shape shape;
  if (name == "cos") {
    shape = waveform::Cosine{number_or("amp", 1.0), number_or("phase", 0.0)};
  } else if (name == "triangle") {
    shape = waveform::Triangle{number_or("amp", 1.0)};
  } else if (name == "square") {
    shape = waveform::Square{number_or("amp", 1.0)};
  } else if (name == "fourier") {
    shape = waveform::Fourier{number_or("a0", 0.0), list_or_empty("a"), list_or_empty("b")};
  } else {
    const auto it = args.find("file");
    if (it == args.end()) {
      cur.seek(text.size());
      cur.fail("'file=' argument for samples");
    }
    std::filesystem::path file(it->second.path);
    if (file.is_relative() && !base_dir.empty()) {
      file = base_dir / file;
    }
    waveform::Sampled s;
    for (const auto & [phase, value] : detail::read_sample_file(file)) {
      s.phases.push_back(phase);
      s.values.push_back(value);
    }
    shape = std::move(s);
  }

  const auto period = args.find("period");
  if (period == args.end()) {
    return PeriodicTrajectory(std::move(shape), RationalPeriod(1));
  }
  const Number & p = *period->second.number;
  if (!(p.value > 0.0)) {
    throw DomainError("period must be positive, got " + std::to_string(p.value));
  }
  if (p.exact && p.exact->first > 0 && p.exact->second > 0) {
    return PeriodicTrajectory(std::move(shape), RationalPeriod(p.exact->first, p.exact->second));
  }
  return PeriodicTrajectory(std::move(shape), p.value);
}

}  // namespace gluskabi::cli
