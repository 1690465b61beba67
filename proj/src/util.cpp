#include <cmath>
#include <iostream>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "dircheeger/error.hpp"
#include "dircheeger/log.hpp"
#include "dircheeger/random.hpp"

namespace dircheeger {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidCut: return "invalid-cut";
    case ErrorKind::kDegenerateCut: return "degenerate-cut";
    case ErrorKind::kSizeLimit: return "size-limit";
    case ErrorKind::kParameter: return "parameter";
    case ErrorKind::kInfeasible: return "infeasible";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kAsymmetric: return "asymmetric";
    case ErrorKind::kReducible: return "reducible";
    case ErrorKind::kNotStationary: return "not-stationary";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kUnknownFamily: return "unknown-family";
    case ErrorKind::kInternal: return "internal";
  }
  return "unknown";
}

void ensure(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorKind::kInternal, "invariant violated: " + what);
}

namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

WarningSink& sink() {
  static WarningSink s = [](std::string_view msg) {
    std::cerr << "warning: " << msg << '\n';
  };
  return s;
}

}  // namespace

void set_warning_sink(WarningSink s) {
  std::lock_guard lock(sink_mutex());
  sink() = std::move(s);
}

void warn(std::string_view message) {
  std::lock_guard lock(sink_mutex());
  if (sink()) sink()(message);
}

std::uint64_t Rng::next_u64() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Lemire-style rejection keeps the result unbiased.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x >= threshold) return x % bound;
  }
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Rng Rng::split() { return Rng(next_u64()); }

}  // namespace dircheeger
