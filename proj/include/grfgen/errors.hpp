#pragma once

#include <stdexcept>
#include <string>

namespace grfgen {

/// Invalid user-facing parameter (bad range, missing key, malformed file).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Analysis requested on a structure that cannot support it
/// (degenerate solid fraction, too few correlation bins, ...).
class analysis_error : public std::runtime_error {
 public:
  explicit analysis_error(const std::string& what) : std::runtime_error(what) {}
};

/// A percolation-dependent quantity was requested but no spanning
/// cluster exists in the given phase along the given axis.
class no_percolation_error : public std::runtime_error {
 public:
  explicit no_percolation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace grfgen
